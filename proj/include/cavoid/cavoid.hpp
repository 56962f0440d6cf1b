#pragma once

#include "cavoid/coloring.hpp"
#include "cavoid/connectivity.hpp"
#include "cavoid/equivalence.hpp"
#include "cavoid/generate.hpp"
#include "cavoid/graph.hpp"
#include "cavoid/matroid.hpp"
#include "cavoid/orientation.hpp"
#include "cavoid/record.hpp"
#include "cavoid/reductions.hpp"
#include "cavoid/subsets.hpp"
#include "cavoid/verify.hpp"
