#pragma once

#include "oddsym/errors.hpp"
#include "oddsym/scalar.hpp"
#include "oddsym/trigpoly.hpp"
#include "oddsym/harmonic.hpp"
#include "oddsym/symbol.hpp"
#include "oddsym/functionals.hpp"
#include "oddsym/decomposition.hpp"
#include "oddsym/group.hpp"
#include "oddsym/oracle.hpp"
#include "oddsym/io.hpp"
#include "oddsym/generate.hpp"
#include "oddsym/suites.hpp"
