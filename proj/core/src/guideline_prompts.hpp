#pragma once

#include <string_view>

namespace eeguide::prompts {

extern const std::string_view kGenerationIntro;
extern const std::string_view kGenerationBody;
extern const std::string_view kConsolidationBody;

}  // namespace eeguide::prompts
