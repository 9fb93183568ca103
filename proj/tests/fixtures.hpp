#pragma once

#include <string>

#include "ftflow/model_io.hpp"

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".flow"; }

inline ftflow::FlowModel fixture(const std::string& name) { return ftflow::load_model(fixture_path(name)); }
