#include "tara/cvss.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "tara/error.hpp"

namespace tara::cvss {

namespace {

// Value letters per metric, listed in the enum's declaration order so that
// a letter's index is the enumerator's underlying value.
struct MetricSpec {
  std::string_view key;
  std::string_view letters;
  bool base;
};

constexpr std::array<MetricSpec, 11> kSpecs{{
    {"AV", "NALP", true},
    {"AC", "LH", true},
    {"PR", "NLH", true},
    {"UI", "NR", true},
    {"S", "UC", true},
    {"C", "NLH", true},
    {"I", "NLH", true},
    {"A", "NLH", true},
    {"E", "XUPFH", false},
    {"RL", "XOTWU", false},
    {"RC", "XURC", false},
}};

struct EnvSpec {
  std::string_view key;
  std::string_view letters;
};

constexpr std::array<EnvSpec, 11> kEnvSpecs{{
    {"CR", "XLMH"},
    {"IR", "XLMH"},
    {"AR", "XLMH"},
    {"MAV", "XNALP"},
    {"MAC", "XLH"},
    {"MPR", "XNLH"},
    {"MUI", "XNR"},
    {"MS", "XUC"},
    {"MC", "XNLH"},
    {"MI", "XNLH"},
    {"MA", "XNLH"},
}};

int spec_index(std::string_view key) {
  for (std::size_t k = 0; k < kSpecs.size(); ++k)
    if (kSpecs[k].key == key) return static_cast<int>(k);
  return -1;
}

const EnvSpec* env_spec(std::string_view key) {
  for (const auto& e : kEnvSpecs)
    if (e.key == key) return &e;
  return nullptr;
}

int get_index(const MetricSet& m, int k) {
  switch (k) {
    case 0: return static_cast<int>(m.av);
    case 1: return static_cast<int>(m.ac);
    case 2: return static_cast<int>(m.pr);
    case 3: return static_cast<int>(m.ui);
    case 4: return static_cast<int>(m.s);
    case 5: return static_cast<int>(m.c);
    case 6: return static_cast<int>(m.i);
    case 7: return static_cast<int>(m.a);
    case 8: return static_cast<int>(m.e);
    case 9: return static_cast<int>(m.rl);
    default: return static_cast<int>(m.rc);
  }
}

template <typename Opt>
void set_opt(Opt& field, int idx) {
  field = static_cast<typename Opt::value_type>(idx);
}

void set_override(MetricOverrides& o, int k, int idx) {
  switch (k) {
    case 0: set_opt(o.av, idx); break;
    case 1: set_opt(o.ac, idx); break;
    case 2: set_opt(o.pr, idx); break;
    case 3: set_opt(o.ui, idx); break;
    case 4: set_opt(o.s, idx); break;
    case 5: set_opt(o.c, idx); break;
    case 6: set_opt(o.i, idx); break;
    case 7: set_opt(o.a, idx); break;
    case 8: set_opt(o.e, idx); break;
    case 9: set_opt(o.rl, idx); break;
    default: set_opt(o.rc, idx); break;
  }
}

std::optional<int> override_index(const MetricOverrides& o, int k) {
  auto idx = [](const auto& opt) -> std::optional<int> {
    if (!opt) return std::nullopt;
    return static_cast<int>(*opt);
  };
  switch (k) {
    case 0: return idx(o.av);
    case 1: return idx(o.ac);
    case 2: return idx(o.pr);
    case 3: return idx(o.ui);
    case 4: return idx(o.s);
    case 5: return idx(o.c);
    case 6: return idx(o.i);
    case 7: return idx(o.a);
    case 8: return idx(o.e);
    case 9: return idx(o.rl);
    default: return idx(o.rc);
  }
}

struct Token {
  std::string_view key;
  std::string_view value;
  std::size_t offset;
};

// Splits "K:V/K:V" into tokens, stripping an optional "CVSS:3.1" prefix.
std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  bool first = true;
  while (pos <= text.size()) {
    std::size_t end = text.find('/', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    if (tok.empty()) {
      if (text.empty()) break;
      throw ParseError("malformed token: empty metric", pos);
    }
    std::size_t colon = tok.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == tok.size() ||
        tok.find(':', colon + 1) != std::string_view::npos)
      throw ParseError("malformed token '" + std::string(tok) + "'", pos);
    std::string_view key = tok.substr(0, colon);
    std::string_view value = tok.substr(colon + 1);
    if (key == "CVSS") {
      if (!first) throw ParseError("CVSS prefix must come first", pos);
      if (value != "3.1")
        throw ParseError("unsupported CVSS version " + std::string(value), pos);
    } else {
      tokens.push_back({key, value, pos});
    }
    first = false;
    if (end == text.size()) break;
    pos = end + 1;
  }
  return tokens;
}

struct Parsed {
  std::array<std::optional<int>, 11> metrics;
  std::map<std::string, std::string> environmental;
};

Parsed parse_tokens(std::string_view text, bool allow_environmental) {
  Parsed out;
  std::vector<std::string_view> seen_env;
  for (const Token& t : tokenize(text)) {
    int k = spec_index(t.key);
    if (k >= 0) {
      if (out.metrics[k])
        throw ParseError("duplicate metric " + std::string(t.key), t.offset);
      std::size_t idx = t.value.size() == 1 ? kSpecs[k].letters.find(t.value[0])
                                            : std::string_view::npos;
      if (idx == std::string_view::npos)
        throw ParseError("unknown value " + std::string(t.value) + " for " +
                             std::string(t.key),
                         t.offset);
      out.metrics[k] = static_cast<int>(idx);
      continue;
    }
    const EnvSpec* env = env_spec(t.key);
    if (env == nullptr)
      throw ParseError("unknown metric key " + std::string(t.key), t.offset);
    if (!allow_environmental)
      throw ParseError("environmental metric " + std::string(t.key) + " not allowed here",
                       t.offset);
    if (std::find(seen_env.begin(), seen_env.end(), t.key) != seen_env.end())
      throw ParseError("duplicate metric " + std::string(t.key), t.offset);
    seen_env.push_back(t.key);
    if (t.value.size() != 1 || env->letters.find(t.value[0]) == std::string_view::npos)
      throw ParseError(
          "unknown value " + std::string(t.value) + " for " + std::string(t.key), t.offset);
    if (t.value != "X") out.environmental.emplace(std::string(t.key), std::string(t.value));
  }
  return out;
}

// Official v3.1 constants.
constexpr double kAv[] = {0.85, 0.62, 0.55, 0.2};
constexpr double kAc[] = {0.77, 0.44};
constexpr double kPrUnchanged[] = {0.85, 0.62, 0.27};
constexpr double kPrChanged[] = {0.85, 0.68, 0.50};
constexpr double kUi[] = {0.85, 0.62};
constexpr double kCia[] = {0.0, 0.22, 0.56};
constexpr double kE[] = {1.0, 0.91, 0.94, 0.97, 1.0};
constexpr double kRl[] = {1.0, 0.95, 0.96, 0.97, 1.0};
constexpr double kRc[] = {1.0, 0.92, 0.96, 1.0};

template <typename Enum>
constexpr std::size_t ix(Enum e) {
  return static_cast<std::size_t>(e);
}

void require_scorable(const MetricSet& m) {
  if (m.has_environmental())
    throw ScoringError("environmental metrics are not supported for scoring: " +
                       format_vector(m));
}

// Unrounded base score.
double raw_base(const MetricSet& m) {
  const bool changed = m.s == Scope::Changed;
  const double iss = 1.0 - (1.0 - kCia[ix(m.c)]) * (1.0 - kCia[ix(m.i)]) * (1.0 - kCia[ix(m.a)]);
  const double impact = changed ? 7.52 * (iss - 0.029) - 3.25 * std::pow(iss - 0.02, 15)
                                : 6.42 * iss;
  const double pr = changed ? kPrChanged[ix(m.pr)] : kPrUnchanged[ix(m.pr)];
  const double exploitability = 8.22 * kAv[ix(m.av)] * kAc[ix(m.ac)] * pr * kUi[ix(m.ui)];
  if (impact <= 0) return 0.0;
  if (changed) return std::min(1.08 * (impact + exploitability), 10.0);
  return std::min(impact + exploitability, 10.0);
}

}  // namespace

bool MetricSet::has_environmental() const { return !environmental.empty(); }

bool MetricOverrides::empty() const { return *this == MetricOverrides{}; }

MetricSet MetricOverrides::applied_to(MetricSet m) const {
  if (av) m.av = *av;
  if (ac) m.ac = *ac;
  if (pr) m.pr = *pr;
  if (ui) m.ui = *ui;
  if (s) m.s = *s;
  if (c) m.c = *c;
  if (i) m.i = *i;
  if (a) m.a = *a;
  if (e) m.e = *e;
  if (rl) m.rl = *rl;
  if (rc) m.rc = *rc;
  return m;
}

Score Score::from_tenths(int tenths) {
  if (tenths < 0 || tenths > 100)
    throw Error("score out of range: " + std::to_string(tenths) + " tenths");
  return Score(tenths);
}

std::string Score::str() const {
  return std::to_string(tenths_ / 10) + "." + std::to_string(tenths_ % 10);
}

MetricSet parse_vector(std::string_view text) {
  Parsed p = parse_tokens(text, true);
  MetricSet m;
  MetricOverrides o;
  for (int k = 0; k < 11; ++k) {
    if (p.metrics[k]) {
      set_override(o, k, *p.metrics[k]);
    } else if (kSpecs[k].base) {
      throw ParseError("missing base metric " + std::string(kSpecs[k].key), text.size());
    }
  }
  m = o.applied_to(m);
  m.environmental = std::move(p.environmental);
  return m;
}

MetricOverrides parse_overrides(std::string_view text) {
  Parsed p = parse_tokens(text, false);
  MetricOverrides o;
  for (int k = 0; k < 11; ++k)
    if (p.metrics[k]) set_override(o, k, *p.metrics[k]);
  return o;
}

std::string metric_letter(const MetricSet& m, std::string_view key) {
  int k = spec_index(key);
  if (k < 0) throw Error("unknown metric key " + std::string(key));
  return std::string(1, kSpecs[k].letters[get_index(m, k)]);
}

std::string format_vector(const MetricSet& m) {
  std::string out = "CVSS:3.1";
  for (int k = 0; k < 11; ++k) {
    char letter = kSpecs[k].letters[get_index(m, k)];
    if (!kSpecs[k].base && letter == 'X') continue;
    out += '/';
    out += kSpecs[k].key;
    out += ':';
    out += letter;
  }
  for (const auto& env : kEnvSpecs) {
    auto it = m.environmental.find(std::string(env.key));
    if (it == m.environmental.end()) continue;
    out += '/';
    out += env.key;
    out += ':';
    out += it->second;
  }
  return out;
}

std::string format_overrides(const MetricOverrides& o) {
  std::string out;
  for (int k = 0; k < 11; ++k) {
    auto idx = override_index(o, k);
    if (!idx) continue;
    if (!out.empty()) out += '/';
    out += kSpecs[k].key;
    out += ':';
    out += kSpecs[k].letters[*idx];
  }
  return out;
}

Score roundup(double x) {
  const long long scaled = std::llround(x * 100000.0);
  const long long tenths = scaled % 10000 == 0 ? scaled / 10000 : scaled / 10000 + 1;
  return Score::from_tenths(static_cast<int>(tenths));
}

Score base_score(const MetricSet& m) {
  require_scorable(m);
  return roundup(raw_base(m));
}

Score temporal_score(const MetricSet& m) {
  require_scorable(m);
  const double base = base_score(m).value();
  return roundup(base * kE[ix(m.e)] * kRl[ix(m.rl)] * kRc[ix(m.rc)]);
}

Severity severity(Score s) {
  const int t = s.tenths();
  if (t == 0) return Severity::None;
  if (t <= 39) return Severity::Low;
  if (t <= 69) return Severity::Medium;
  if (t <= 89) return Severity::High;
  return Severity::Critical;
}

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::None: return "None";
    case Severity::Low: return "Low";
    case Severity::Medium: return "Medium";
    case Severity::High: return "High";
    case Severity::Critical: return "Critical";
  }
  return "None";
}

Severity severity_from_string(std::string_view s) {
  for (Severity v : {Severity::None, Severity::Low, Severity::Medium, Severity::High,
                     Severity::Critical})
    if (to_string(v) == s) return v;
  throw ParseError("unknown severity '" + std::string(s) + "'");
}

}  // namespace tara::cvss
