#pragma once

#include "dsts/construct.hpp"
#include "dsts/core.hpp"
#include "dsts/dw.hpp"
#include "dsts/exact.hpp"
#include "dsts/instgen.hpp"
#include "dsts/io.hpp"
#include "dsts/milp/arctime.hpp"
#include "dsts/milp/bigm.hpp"
#include "dsts/milp/model.hpp"
#include "dsts/rational.hpp"
#include "dsts/rng.hpp"
#include "dsts/vns.hpp"
