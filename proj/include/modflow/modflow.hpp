#pragma once

#include "modflow/bench.hpp"
#include "modflow/edge_connectivity_mw.hpp"
#include "modflow/generate.hpp"
#include "modflow/graph.hpp"
#include "modflow/io.hpp"
#include "modflow/kernels/flow.hpp"
#include "modflow/kernels/matching.hpp"
#include "modflow/kernels/mincut.hpp"
#include "modflow/kernels/triangles.hpp"
#include "modflow/matching_mw.hpp"
#include "modflow/mdtree.hpp"
#include "modflow/report.hpp"
#include "modflow/triangles_mw.hpp"
#include "modflow/vertex_connectivity_mw.hpp"
#include "modflow/wide.hpp"
