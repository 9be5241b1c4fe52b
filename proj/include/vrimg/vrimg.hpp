#pragma once

#include "vrimg/color_set.hpp"
#include "vrimg/color_stats.hpp"
#include "vrimg/depth.hpp"
#include "vrimg/detect.hpp"
#include "vrimg/fraction.hpp"
#include "vrimg/homology.hpp"
#include "vrimg/image.hpp"
#include "vrimg/image_io.hpp"
#include "vrimg/report.hpp"
#include "vrimg/rips_graph.hpp"
#include "vrimg/union_find.hpp"
#include "vrimg/vertex_index.hpp"
