#pragma once

#include "torilat/errors.hpp"
#include "torilat/intlin.hpp"
#include "torilat/gfield.hpp"
#include "torilat/grading.hpp"
#include "torilat/torus.hpp"
#include "torilat/lattice.hpp"
#include "torilat/codes.hpp"
