#pragma once

#include "cli.hpp"
#include "csr.hpp"
#include "instance.hpp"
#include "instances.hpp"
#include "io.hpp"
#include "matrix.hpp"
#include "oracle.hpp"
#include "pivot.hpp"
#include "scalar.hpp"
#include "solver.hpp"
#include "tableau.hpp"
