#pragma once

#include "catlab/core_states.hpp"
#include "catlab/errors.hpp"
#include "catlab/fock_oracle.hpp"
#include "catlab/io.hpp"
#include "catlab/measurement.hpp"
#include "catlab/mode_integrals.hpp"
#include "catlab/quadrature.hpp"
#include "catlab/sweep.hpp"
