#include "kpp/preset.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "kpp/errors.hpp"

namespace kpp {

namespace {

struct SeriesSpec {
  bool any = false;
  bool has_samples = false;
  double const_term = 0.0;
  bool has_const = false;
  std::map<int, double> cosk, sink;
  std::vector<double> samples;
  double alpha1 = 0.0, alpha2 = 0.0;
  bool has_alpha1 = false, has_alpha2 = false;
};

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& what) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << what;
  fail(ErrorCode::Parse, os.str());
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& v, const std::string& origin, int line) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') parse_fail(origin, line, "expected a number, got '" + v + "'");
  return x;
}

std::vector<double> parse_number_list(const std::string& v, const std::string& origin, int line) {
  std::vector<double> out;
  std::istringstream is(v);
  std::string tok;
  while (is >> tok) out.push_back(parse_number(tok, origin, line));
  if (out.empty()) parse_fail(origin, line, "expected a list of numbers");
  return out;
}

// key is "cosK" or "sinK" with K >= 1
bool parse_wave_key(const std::string& key, const char* prefix, int* k) {
  const size_t n = std::char_traits<char>::length(prefix);
  if (key.size() <= n || key.compare(0, n, prefix) != 0) return false;
  for (size_t i = n; i < key.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(key[i]))) return false;
  *k = std::atoi(key.c_str() + n);
  return *k >= 1;
}

bool handle_series_key(SeriesSpec& spec, const std::string& sub, const std::string& value,
                       const std::string& origin, int line) {
  int k = 0;
  if (sub == "const") {
    if (spec.has_const) parse_fail(origin, line, "duplicate const term");
    spec.const_term = parse_number(value, origin, line);
    spec.has_const = spec.any = true;
  } else if (sub == "alpha1") {
    spec.alpha1 = parse_number(value, origin, line);
    spec.has_alpha1 = spec.any = true;
  } else if (sub == "alpha2") {
    spec.alpha2 = parse_number(value, origin, line);
    spec.has_alpha2 = spec.any = true;
  } else if (sub == "samples") {
    spec.samples = parse_number_list(value, origin, line);
    spec.has_samples = spec.any = true;
  } else if (parse_wave_key(sub, "cos", &k)) {
    if (!spec.cosk.emplace(k, parse_number(value, origin, line)).second)
      parse_fail(origin, line, "duplicate series term " + sub);
    spec.any = true;
  } else if (parse_wave_key(sub, "sin", &k)) {
    if (!spec.sink.emplace(k, parse_number(value, origin, line)).second)
      parse_fail(origin, line, "duplicate series term " + sub);
    spec.any = true;
  } else {
    return false;
  }
  return true;
}

PeriodicCoefficient build_coefficient(const SeriesSpec& spec, const char* which,
                                      const std::string& origin) {
  if (spec.has_samples) {
    if (spec.has_const || !spec.cosk.empty() || !spec.sink.empty())
      fail(ErrorCode::Parse, origin + ": " + which + ": samples and series terms are exclusive");
    return PeriodicCoefficient::samples(spec.samples, spec.alpha1, spec.alpha2);
  }
  if (!spec.has_const)
    fail(ErrorCode::Parse, origin + ": " + which + ": missing const term (or samples)");
  std::map<int, PeriodicCoefficient::Term> terms;
  for (auto [k, v] : spec.cosk) terms[k].k = k, terms[k].cos_c = v;
  for (auto [k, v] : spec.sink) terms[k].k = k, terms[k].sin_c = v;
  std::vector<PeriodicCoefficient::Term> tv;
  for (auto& [k, t] : terms) tv.push_back(t);
  return PeriodicCoefficient::series(spec.const_term, std::move(tv), spec.alpha1, spec.alpha2);
}

}  // namespace

Preset parse_preset(const std::string& text, const std::string& origin) {
  SeriesSpec a_spec, mu_spec;
  std::string name, reaction_kind;
  double s0 = 0.0, M = 0.0;
  bool has_s0 = false, has_M = false;

  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    const size_t eq = s.find('=');
    if (eq == std::string::npos) parse_fail(origin, line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty()) parse_fail(origin, line, "expected 'key = value'");

    if (key == "name") {
      name = value;
    } else if (key == "reaction") {
      reaction_kind = value;
    } else if (key == "s0") {
      s0 = parse_number(value, origin, line);
      has_s0 = true;
    } else if (key == "M") {
      M = parse_number(value, origin, line);
      has_M = true;
    } else if (key.rfind("a.", 0) == 0) {
      if (!handle_series_key(a_spec, key.substr(2), value, origin, line))
        parse_fail(origin, line, "unknown key '" + key + "'");
    } else if (key.rfind("mu.", 0) == 0) {
      if (!handle_series_key(mu_spec, key.substr(3), value, origin, line))
        parse_fail(origin, line, "unknown key '" + key + "'");
    } else {
      parse_fail(origin, line, "unknown key '" + key + "'");
    }
  }

  if (reaction_kind.empty()) fail(ErrorCode::Parse, origin + ": missing 'reaction' kind");
  if (!a_spec.any) fail(ErrorCode::Parse, origin + ": missing diffusion section 'a.*'");
  if (!mu_spec.any) fail(ErrorCode::Parse, origin + ": missing growth-rate section 'mu.*'");
  if (!a_spec.has_alpha1 || !a_spec.has_alpha2)
    fail(ErrorCode::Parse, origin + ": diffusion needs a.alpha1 and a.alpha2 bounds");

  Preset p;
  p.name = name;
  p.a = build_coefficient(a_spec, "a", origin);
  PeriodicCoefficient mu = build_coefficient(mu_spec, "mu", origin);

  if (reaction_kind == "logistic") {
    if (!has_s0) s0 = 1.0;
    if (has_M && M != s0)
      fail(ErrorCode::Parse, origin + ": logistic reaction has M = s0; drop the M line");
    p.reaction = ReactionModel::logistic(std::move(mu), s0);
  } else if (reaction_kind == "quadratic") {
    if (has_s0) fail(ErrorCode::Parse, origin + ": quadratic reaction has no common zero s0");
    if (!has_M) fail(ErrorCode::Parse, origin + ": quadratic reaction needs explicit M");
    p.reaction = ReactionModel::quadratic(std::move(mu), M);
  } else {
    fail(ErrorCode::Parse, origin + ": unknown reaction kind '" + reaction_kind + "'");
  }

  p.means = compute_means(p.a, p.reaction);
  return p;
}

Preset load_preset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open preset file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_preset(buf.str(), path);
}

namespace {

struct BuiltinEntry {
  const char* name;
  const char* text;
};

const BuiltinEntry kBuiltins[] = {
    {"fisher-const",
     "name = fisher-const\n"
     "reaction = logistic\n"
     "s0 = 1.0\n"
     "a.const = 1.0\n"
     "a.alpha1 = 1.0\n"
     "a.alpha2 = 1.0\n"
     "mu.const = 1.0\n"},
    {"cos-diffusion-05",
     "name = cos-diffusion-05\n"
     "reaction = logistic\n"
     "s0 = 1.0\n"
     "a.const = 1.0\n"
     "a.cos1 = 0.5\n"
     "a.alpha1 = 0.5\n"
     "a.alpha2 = 1.5\n"
     "mu.const = 1.0\n"},
    {"cos-diffusion-09",
     "name = cos-diffusion-09\n"
     "reaction = logistic\n"
     "s0 = 1.0\n"
     "a.const = 1.0\n"
     "a.cos1 = 0.9\n"
     "a.alpha1 = 0.1\n"
     "a.alpha2 = 1.9\n"
     "mu.const = 1.0\n"},
    {"het-mu",
     "name = het-mu\n"
     "reaction = quadratic\n"
     "M = 2.0\n"
     "a.const = 1.0\n"
     "a.alpha1 = 1.0\n"
     "a.alpha2 = 1.0\n"
     "mu.const = 1.0\n"
     "mu.cos1 = 1.0\n"},
    {"common-zero",
     "name = common-zero\n"
     "reaction = logistic\n"
     "s0 = 1.0\n"
     "a.const = 1.0\n"
     "a.cos1 = 0.5\n"
     "a.alpha1 = 0.5\n"
     "a.alpha2 = 1.5\n"
     "mu.const = 1.0\n"
     "mu.sin1 = 0.3\n"},
};

}  // namespace

const char* builtin_preset_text(const std::string& name) {
  for (const auto& e : kBuiltins)
    if (name == e.name) return e.text;
  return nullptr;
}

Preset builtin_preset(const std::string& name) {
  const char* text = builtin_preset_text(name);
  if (!text) fail(ErrorCode::InvalidArgument, "unknown builtin preset '" + name + "'");
  return parse_preset(text, "builtin:" + name);
}

std::vector<std::string> builtin_preset_names() {
  std::vector<std::string> out;
  for (const auto& e : kBuiltins) out.emplace_back(e.name);
  return out;
}

Preset resolve_preset(const std::string& name_or_path) {
  if (builtin_preset_text(name_or_path)) return builtin_preset(name_or_path);
  return load_preset_file(name_or_path);
}

}  // namespace kpp
