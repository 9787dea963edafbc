#pragma once

#include "fracwave/error.hpp"
#include "fracwave/types.hpp"
#include "fracwave/mittag_leffler.hpp"
#include "fracwave/wright.hpp"
#include "fracwave/green_function.hpp"
#include "fracwave/extremum.hpp"
