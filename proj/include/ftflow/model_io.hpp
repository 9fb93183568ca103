#pragma once

#include <string>

#include "ftflow/model.hpp"

namespace ftflow {

// Parses the text format and validates the result. Throws ModelError.
FlowModel parse_model(const std::string& text);

// Syntax only; no structural validation.
FlowModel parse_model_unchecked(const std::string& text);

std::string serialize_model(const FlowModel& m);

FlowModel load_model(const std::string& path);

std::string format_walk(const Walk& w);
Walk parse_walk(const std::string& s);

}  // namespace ftflow
