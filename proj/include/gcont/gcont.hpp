#pragma once

#include "gcont/bezier.hpp"
#include "gcont/construct.hpp"
#include "gcont/continuity.hpp"
#include "gcont/error.hpp"
#include "gcont/io.hpp"
#include "gcont/report.hpp"
