#pragma once

#include "derivkit/error.hpp"
#include "derivkit/rational.hpp"
#include "derivkit/linear.hpp"
#include "derivkit/algebra.hpp"
#include "derivkit/closures.hpp"
#include "derivkit/derivations.hpp"
#include "derivkit/poly.hpp"
#include "derivkit/certificate.hpp"
#include "derivkit/freealg.hpp"
#include "derivkit/bimodule.hpp"
#include "derivkit/expectation.hpp"
