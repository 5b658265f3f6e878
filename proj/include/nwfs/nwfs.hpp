#pragma once

#include "nwfs/algebra.hpp"
#include "nwfs/arrows.hpp"
#include "nwfs/base.hpp"
#include "nwfs/check.hpp"
#include "nwfs/colimit.hpp"
#include "nwfs/compare.hpp"
#include "nwfs/errors.hpp"
#include "nwfs/freeseq.hpp"
#include "nwfs/hom.hpp"
#include "nwfs/json_io.hpp"
#include "nwfs/monoidal.hpp"
#include "nwfs/onestep.hpp"
#include "nwfs/oracles.hpp"
#include "nwfs/stage.hpp"
