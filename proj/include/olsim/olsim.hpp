#ifndef OLSIM_OLSIM_HPP
#define OLSIM_OLSIM_HPP

#include "olsim/adversary.hpp"
#include "olsim/analysis.hpp"
#include "olsim/bounds.hpp"
#include "olsim/engine.hpp"
#include "olsim/error.hpp"
#include "olsim/instance.hpp"
#include "olsim/metric.hpp"
#include "olsim/offline.hpp"
#include "olsim/predictor.hpp"
#include "olsim/rng.hpp"
#include "olsim/schedule.hpp"

#endif
