#pragma once

#include "steklov/comparison.hpp"
#include "steklov/constants.hpp"
#include "steklov/errors.hpp"
#include "steklov/expression.hpp"
#include "steklov/extended_real.hpp"
#include "steklov/pohozaev.hpp"
#include "steklov/quadrature.hpp"
#include "steklov/riccati.hpp"
#include "steklov/spectra.hpp"
#include "steklov/verify.hpp"
