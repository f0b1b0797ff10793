#pragma once

#include "hsk/core.hpp"
#include "hsk/crown.hpp"
#include "hsk/errors.hpp"
#include "hsk/io.hpp"
#include "hsk/lp.hpp"
#include "hsk/matching.hpp"
#include "hsk/oracle.hpp"
#include "hsk/reductions.hpp"
#include "hsk/verify.hpp"
