#pragma once

#include "jacsplit/acceptance.hpp"
#include "jacsplit/arith.hpp"
#include "jacsplit/artin.hpp"
#include "jacsplit/cartier.hpp"
#include "jacsplit/char2.hpp"
#include "jacsplit/decompose.hpp"
#include "jacsplit/error.hpp"
#include "jacsplit/fast_field.hpp"
#include "jacsplit/field.hpp"
#include "jacsplit/polynomial.hpp"
#include "jacsplit/rank_twist.hpp"
#include "jacsplit/report.hpp"
#include "jacsplit/special_polys.hpp"
#include "jacsplit/zeta.hpp"
