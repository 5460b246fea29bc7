#pragma once

#include "anmult/errors.hpp"
#include "anmult/exact/matrix.hpp"
#include "anmult/exact/poly.hpp"
#include "anmult/exact/ratfunc.hpp"
#include "anmult/exact/rational.hpp"
#include "anmult/exact/reconstruct.hpp"
#include "anmult/formulas/calibrate.hpp"
#include "anmult/formulas/corpus.hpp"
#include "anmult/formulas/derive.hpp"
#include "anmult/formulas/identity.hpp"
#include "anmult/formulas/solve.hpp"
#include "anmult/formulas/spec.hpp"
#include "anmult/formulas/theta_closed_form.hpp"
#include "anmult/freudenthal.hpp"
#include "anmult/orbit_characters.hpp"
#include "anmult/partitions.hpp"
#include "anmult/weights.hpp"
