#pragma once

#include <string>
#include <vector>

#include "kpp/means.hpp"
#include "kpp/reaction.hpp"

namespace kpp {

// A preset bundles the periodic diffusion, the reaction model, and the cell
// means derived from them.  Presets come from a small line-oriented text
// format ("key = value", '#' comments; see the files under presets/) or from
// the compiled-in catalog, which is written in the same format and goes
// through the same parser.
struct Preset {
  std::string name;
  PeriodicCoefficient a;
  ReactionModel reaction;
  MeanSet means;
};

Preset parse_preset(const std::string& text, const std::string& origin = "<string>");
Preset load_preset_file(const std::string& path);
Preset builtin_preset(const std::string& name);
std::vector<std::string> builtin_preset_names();
// Resolves a builtin name first, then a filesystem path.
Preset resolve_preset(const std::string& name_or_path);
const char* builtin_preset_text(const std::string& name);

}  // namespace kpp
