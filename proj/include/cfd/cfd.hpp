// Umbrella header.
#pragma once

#include "cfd/dispatch.hpp"
#include "cfd/ef_path.hpp"
#include "cfd/errors.hpp"
#include "cfd/generators.hpp"
#include "cfd/graph.hpp"
#include "cfd/io.hpp"
#include "cfd/matching.hpp"
#include "cfd/mms_tree.hpp"
#include "cfd/model.hpp"
#include "cfd/oracle.hpp"
#include "cfd/parallel.hpp"
#include "cfd/prop_solvers.hpp"
#include "cfd/rational.hpp"
#include "cfd/tree_fpt.hpp"
