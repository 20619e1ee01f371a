#pragma once

#include "incilab/error.hpp"
#include "incilab/rational.hpp"
#include "incilab/geom.hpp"
#include "incilab/unipoly.hpp"
#include "incilab/tripoly.hpp"
#include "incilab/algebra.hpp"
#include "incilab/linalg.hpp"
#include "incilab/parallel.hpp"
#include "incilab/random.hpp"
#include "incilab/incidence.hpp"
#include "incilab/powers.hpp"
#include "incilab/bounds.hpp"
#include "incilab/partition.hpp"
#include "incilab/configs.hpp"
#include "incilab/serialize.hpp"
#include "incilab/pipeline.hpp"
