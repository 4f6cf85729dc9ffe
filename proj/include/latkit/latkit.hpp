#pragma once

#include "latkit/error.hpp"
#include "latkit/bits.hpp"
#include "latkit/lattice.hpp"
#include "latkit/io.hpp"
#include "latkit/properties.hpp"
#include "latkit/canonical.hpp"
#include "latkit/ideals.hpp"
#include "latkit/polars.hpp"
#include "latkit/classes.hpp"
#include "latkit/gen.hpp"
#include "latkit/audit.hpp"
#include "latkit/report.hpp"
#include "latkit/query.hpp"
#include "latkit/cli.hpp"
