#pragma once

#include <json.hpp>

#include "scenval/engine.hpp"

namespace scenval {

/// Violation rendered with a stable key order; events use the canonical
/// `sender->receiver.message(...)` form.
nlohmann::ordered_json to_json(const Violation& violation);

/// Trace rendered as {injected, executed[{event,by}], violations, ...}.
nlohmann::ordered_json to_json(const SuperstepTrace& trace);

}  // namespace scenval
