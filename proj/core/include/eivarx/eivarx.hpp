#pragma once

#include "eivarx/baselines.hpp"
#include "eivarx/constraint_est.hpp"
#include "eivarx/errors.hpp"
#include "eivarx/io.hpp"
#include "eivarx/lagged_data.hpp"
#include "eivarx/mc_harness.hpp"
#include "eivarx/nelder_mead.hpp"
#include "eivarx/noise_model.hpp"
#include "eivarx/order_select.hpp"
#include "eivarx/pipeline.hpp"
#include "eivarx/rng.hpp"
#include "eivarx/signal_gen.hpp"
#include "eivarx/types.hpp"
#include "eivarx/variance_est.hpp"
