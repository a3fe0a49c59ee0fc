#pragma once

#include "equipkit/error.hpp"
#include "equipkit/delta.hpp"
#include "equipkit/fincat.hpp"
#include "equipkit/cat_colimit.hpp"
#include "equipkit/profcollage.hpp"
#include "equipkit/simpset.hpp"
#include "equipkit/sset_limits.hpp"
#include "equipkit/sset_iso.hpp"
#include "equipkit/sset_maps.hpp"
#include "equipkit/homology.hpp"
#include "equipkit/site.hpp"
#include "equipkit/sharp.hpp"
#include "equipkit/checks.hpp"
#include "equipkit/vertical.hpp"
#include "equipkit/right.hpp"
#include "equipkit/json_io.hpp"
#include "equipkit/corpus.hpp"
