#pragma once

#include "besselquad/antiderivative.hpp"
#include "besselquad/definite.hpp"
#include "besselquad/errors.hpp"
#include "besselquad/mixed_order.hpp"
#include "besselquad/ordinary_bessel.hpp"
#include "besselquad/quadrature.hpp"
#include "besselquad/same_order.hpp"
#include "besselquad/single.hpp"
#include "besselquad/sph_bessel.hpp"
#include "besselquad/squared.hpp"
#include "besselquad/trig_primitives.hpp"
#include "besselquad/weighted.hpp"
