#pragma once

// Umbrella header for the swarmopt library.

#include "swarmopt/csv.hpp"
#include "swarmopt/dynamics.hpp"
#include "swarmopt/errors.hpp"
#include "swarmopt/experiment.hpp"
#include "swarmopt/objectives.hpp"
#include "swarmopt/stochastic.hpp"
#include "swarmopt/swarm.hpp"
#include "swarmopt/walks.hpp"
