#pragma once

#include "angle.hpp"
#include "bbasis.hpp"
#include "check.hpp"
#include "curve.hpp"
#include "error.hpp"
#include "exact.hpp"
#include "io.hpp"
#include "surface.hpp"
#include "xform.hpp"
