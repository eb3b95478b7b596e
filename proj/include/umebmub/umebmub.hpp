#pragma once

#include "umebmub/linalg.hpp"
#include "umebmub/report.hpp"
#include "umebmub/entanglement.hpp"
#include "umebmub/bases.hpp"
#include "umebmub/mub.hpp"
#include "umebmub/search.hpp"
#include "umebmub/io.hpp"
