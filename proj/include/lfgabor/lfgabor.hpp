#pragma once

#include "lfgabor/field.hpp"
#include "lfgabor/laurent.hpp"
#include "lfgabor/grid.hpp"
#include "lfgabor/transform.hpp"
#include "lfgabor/gabor.hpp"
#include "lfgabor/certify.hpp"
#include "lfgabor/oracle.hpp"
#include "lfgabor/json_io.hpp"
