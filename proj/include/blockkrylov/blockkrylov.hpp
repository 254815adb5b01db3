#pragma once

// Umbrella header for the block Krylov solver library.

#include "blockkrylov/block_vector.hpp"
#include "blockkrylov/errors.hpp"
#include "blockkrylov/kernels.hpp"
#include "blockkrylov/perf_model.hpp"
#include "blockkrylov/preconditioners.hpp"
#include "blockkrylov/problems.hpp"
#include "blockkrylov/solver.hpp"
#include "blockkrylov/sparse_matrix.hpp"
#include "blockkrylov/subalgebra.hpp"
#include "blockkrylov/theory.hpp"
