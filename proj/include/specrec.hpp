#pragma once

#include "specrec/scalar.hpp"
#include "specrec/poly.hpp"
#include "specrec/ratfun.hpp"
#include "specrec/laurent.hpp"
#include "specrec/involution.hpp"
#include "specrec/curve.hpp"
#include "specrec/correlator.hpp"
#include "specrec/recursion.hpp"
#include "specrec/invariants.hpp"
#include "specrec/io.hpp"
