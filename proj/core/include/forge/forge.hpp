#pragma once

#include "forge/dehn.hpp"
#include "forge/epimorphism_demo.hpp"
#include "forge/errors.hpp"
#include "forge/finite_group.hpp"
#include "forge/norms.hpp"
#include "forge/parallel.hpp"
#include "forge/presentation.hpp"
#include "forge/product_search.hpp"
#include "forge/rational.hpp"
#include "forge/relator_forge.hpp"
#include "forge/serialize.hpp"
#include "forge/small_cancellation.hpp"
#include "forge/suffix_array.hpp"
#include "forge/tower.hpp"
#include "forge/witness.hpp"
#include "forge/words.hpp"
