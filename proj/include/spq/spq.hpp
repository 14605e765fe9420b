#pragma once

#include "spq/builtin.hpp"
#include "spq/error.hpp"
#include "spq/global_functor.hpp"
#include "spq/group.hpp"
#include "spq/group_io.hpp"
#include "spq/homology.hpp"
#include "spq/homomorphism.hpp"
#include "spq/lattice.hpp"
#include "spq/partition.hpp"
#include "spq/report.hpp"
#include "spq/subgroups.hpp"
