#pragma once

#include "dimcf/error.hpp"
#include "dimcf/integer.hpp"
#include "dimcf/rational.hpp"
#include "dimcf/surd.hpp"
#include "dimcf/precision_real.hpp"
#include "dimcf/real_value.hpp"
#include "dimcf/matrix.hpp"
#include "dimcf/regular_cf.hpp"
#include "dimcf/jacobi_perron.hpp"
#include "dimcf/modular_group.hpp"
#include "dimcf/dimension_group.hpp"
#include "dimcf/text.hpp"
#include "dimcf/json_io.hpp"
