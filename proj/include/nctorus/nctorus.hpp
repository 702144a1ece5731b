#pragma once

#include "errors.hpp"
#include "lattice.hpp"
#include "cocycle.hpp"
#include "torus_element.hpp"
#include "operator_matrix.hpp"
#include "multipliers.hpp"
#include "random.hpp"
#include "kernels.hpp"
#include "schatten.hpp"
#include "serialize.hpp"
#include "sampling.hpp"
#include "reference.hpp"
#include "parallel.hpp"
#include "experiment.hpp"
