#pragma once

// Umbrella header: SQL-log driven PK/FK relationship discovery.

#include "relq/ast.hpp"            // IWYU pragma: export
#include "relq/baseline.hpp"       // IWYU pragma: export
#include "relq/catalog.hpp"        // IWYU pragma: export
#include "relq/classifier.hpp"     // IWYU pragma: export
#include "relq/csv.hpp"            // IWYU pragma: export
#include "relq/errors.hpp"         // IWYU pragma: export
#include "relq/extract.hpp"        // IWYU pragma: export
#include "relq/lexer.hpp"          // IWYU pragma: export
#include "relq/parser.hpp"         // IWYU pragma: export
#include "relq/pipeline.hpp"       // IWYU pragma: export
#include "relq/profiler.hpp"       // IWYU pragma: export
#include "relq/rational.hpp"       // IWYU pragma: export
#include "relq/resolve.hpp"        // IWYU pragma: export
#include "relq/table_store.hpp"    // IWYU pragma: export
#include "relq/value.hpp"          // IWYU pragma: export
