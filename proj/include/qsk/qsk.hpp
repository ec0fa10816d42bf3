#pragma once

#include "qsk/abelian_group.hpp"
#include "qsk/bigint.hpp"
#include "qsk/errors.hpp"
#include "qsk/family.hpp"
#include "qsk/int_matrix.hpp"
#include "qsk/kgraph.hpp"
#include "qsk/koszul.hpp"
#include "qsk/lcmsemi.hpp"
#include "qsk/monocalc.hpp"
#include "qsk/smith.hpp"
#include "qsk/specseq.hpp"
