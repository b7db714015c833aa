#pragma once

// Umbrella header.
#include "nabla/classify.hpp"
#include "nabla/error.hpp"
#include "nabla/expr.hpp"
#include "nabla/gamma.hpp"
#include "nabla/invert.hpp"
#include "nabla/pfe.hpp"
#include "nabla/polynomial.hpp"
#include "nabla/rational.hpp"
#include "nabla/roc.hpp"
#include "nabla/roots.hpp"
#include "nabla/sequence.hpp"
#include "nabla/specfun.hpp"
#include "nabla/table.hpp"
#include "nabla/verify.hpp"
