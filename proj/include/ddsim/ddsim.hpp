#pragma once

#include "ddsim/bounds.hpp"
#include "ddsim/calibrate.hpp"
#include "ddsim/config.hpp"
#include "ddsim/cycle.hpp"
#include "ddsim/expm_log.hpp"
#include "ddsim/fit.hpp"
#include "ddsim/group.hpp"
#include "ddsim/hamiltonian.hpp"
#include "ddsim/magnus.hpp"
#include "ddsim/matrix_ops.hpp"
#include "ddsim/operator_types.hpp"
#include "ddsim/pauli.hpp"
#include "ddsim/report.hpp"
#include "ddsim/rng.hpp"
#include "ddsim/scenario.hpp"
#include "ddsim/schedule.hpp"
#include "ddsim/states.hpp"
#include "ddsim/sweep.hpp"
#include "ddsim/switched.hpp"
#include "ddsim/verify.hpp"
