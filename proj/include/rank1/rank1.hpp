#pragma once

#include "rank1/ambient.hpp"
#include "rank1/bounds.hpp"
#include "rank1/checks.hpp"
#include "rank1/constants.hpp"
#include "rank1/differential.hpp"
#include "rank1/exact_constant.hpp"
#include "rank1/functionals.hpp"
#include "rank1/kraines.hpp"
#include "rank1/maps.hpp"
#include "rank1/points.hpp"
#include "rank1/quaternion.hpp"
#include "rank1/rng.hpp"
#include "rank1/sampling.hpp"
#include "rank1/space.hpp"
#include "rank1/submanifolds.hpp"
#include "rank1/suites.hpp"
