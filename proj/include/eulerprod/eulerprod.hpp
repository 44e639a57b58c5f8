#pragma once

#include "eulerprod/arith.hpp"
#include "eulerprod/bigreal.hpp"
#include "eulerprod/congruence.hpp"
#include "eulerprod/errors.hpp"
#include "eulerprod/evaluate.hpp"
#include "eulerprod/expand.hpp"
#include "eulerprod/funcs.hpp"
#include "eulerprod/qseries.hpp"
#include "eulerprod/rational.hpp"
#include "eulerprod/zeta.hpp"
