#pragma once

// Single-header nlohmann/json from the vendor/ tree (on the include path).
#include <json.hpp>
