#pragma once

#include "corgi/baseline.hpp"
#include "corgi/comparator.hpp"
#include "corgi/error.hpp"
#include "corgi/facts.hpp"
#include "corgi/matchiter.hpp"
#include "corgi/oracle.hpp"
#include "corgi/patterns.hpp"
#include "corgi/relgraph.hpp"
