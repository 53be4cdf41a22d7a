#include "tfcalc/config.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tfcalc/group.hpp"

namespace tfcalc {

namespace {
std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<int> parse_ints(const std::string& v, const std::string& key) {
  std::vector<int> out;
  std::stringstream ss(v);
  long long x;
  while (ss >> x) out.push_back(static_cast<int>(x));
  if (!ss.eof() || out.empty())
    throw std::invalid_argument("config: '" + key + "' expects a list of integers");
  return out;
}

double parse_double(const std::string& v, const std::string& key) {
  std::size_t pos = 0;
  double x = std::stod(v, &pos);
  if (trim(v.substr(pos)).size() != 0)
    throw std::invalid_argument("config: '" + key + "' expects a number");
  return x;
}

[[noreturn]] void unknown(const std::string& section, const std::string& key) {
  throw std::invalid_argument("config: unknown key '" + key + "' in section [" + section + "]");
}
}  // namespace

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::identities: return "identities";
    case ExperimentKind::frames: return "frames";
    case ExperimentKind::almost_diag: return "almost-diag";
    case ExperimentKind::wiener: return "wiener";
    case ExperimentKind::section6: return "section6";
  }
  return "?";
}

std::string to_string(WindowKind k) {
  switch (k) {
    case WindowKind::delta: return "delta";
    case WindowKind::subgroup: return "subgroup";
    case WindowKind::gaussian: return "gaussian";
    case WindowKind::csv: return "csv";
  }
  return "?";
}

std::string to_string(WeightFamily k) {
  return k == WeightFamily::polynomial ? "polynomial" : "subexponential";
}

std::string to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::identity: return "identity";
    case SymbolKind::shift: return "shift";
    case SymbolKind::random: return "random";
    case SymbolKind::csv: return "csv";
  }
  return "?";
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& name) {
  ExperimentConfig c;
  c.name = name;
  std::stringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw std::invalid_argument("config: bad section header at line " +
                                    std::to_string(lineno));
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected 'key = value' at line " +
                                  std::to_string(lineno));
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (value.empty())
      throw std::invalid_argument("config: empty value for '" + key + "'");

    if (section == "group") {
      if (key == "moduli") c.moduli = parse_ints(value, key);
      else unknown(section, key);
    } else if (section == "lattice") {
      if (key == "steps") c.lattice_steps = parse_ints(value, key);
      else unknown(section, key);
    } else if (section == "window") {
      if (key == "kind") {
        if (value == "delta") c.window = WindowKind::delta;
        else if (value == "subgroup") c.window = WindowKind::subgroup;
        else if (value == "gaussian") c.window = WindowKind::gaussian;
        else if (value == "csv") c.window = WindowKind::csv;
        else throw std::invalid_argument("config: unknown window kind '" + value + "'");
      } else if (key == "steps") c.window_steps = parse_ints(value, key);
      else if (key == "path") c.window_path = value;
      else unknown(section, key);
    } else if (section == "weight") {
      if (key == "kind") {
        if (value == "polynomial") c.weight = WeightFamily::polynomial;
        else if (value == "subexponential") c.weight = WeightFamily::subexponential;
        else throw std::invalid_argument("config: unknown weight kind '" + value + "'");
      } else if (key == "s") c.weight_s = parse_double(value, key);
      else if (key == "a") c.weight_a = parse_double(value, key);
      else if (key == "b") c.weight_b = parse_double(value, key);
      else unknown(section, key);
    } else if (section == "symbol") {
      if (key == "kind") {
        if (value == "identity") c.symbol = SymbolKind::identity;
        else if (value == "shift") c.symbol = SymbolKind::shift;
        else if (value == "random") c.symbol = SymbolKind::random;
        else if (value == "csv") c.symbol = SymbolKind::csv;
        else throw std::invalid_argument("config: unknown symbol kind '" + value + "'");
      } else if (key == "shift") c.symbol_shift = parse_ints(value, key);
      else if (key == "decay") c.symbol_decay = parse_double(value, key);
      else if (key == "path") c.symbol_path = value;
      else unknown(section, key);
    } else if (section == "experiment") {
      if (key == "kind") {
        if (value == "identities") c.kind = ExperimentKind::identities;
        else if (value == "frames") c.kind = ExperimentKind::frames;
        else if (value == "almost-diag") c.kind = ExperimentKind::almost_diag;
        else if (value == "wiener") c.kind = ExperimentKind::wiener;
        else if (value == "section6") c.kind = ExperimentKind::section6;
        else throw std::invalid_argument("config: unknown experiment kind '" + value + "'");
      } else if (key == "seed") c.seed = std::stoull(value);
      else if (key == "trials") c.trials = static_cast<int>(std::stol(value));
      else unknown(section, key);
    } else if (section == "tolerances") {
      if (key == "identity") c.tol_identity = parse_double(value, key);
      else if (key == "tight") c.tol_tight = parse_double(value, key);
      else if (key == "pinv") c.tol_pinv = parse_double(value, key);
      else if (key == "rank") c.tol_rank = parse_double(value, key);
      else unknown(section, key);
    } else if (section == "output") {
      if (key == "report") c.report_path = value;
      else if (key == "envelopes") c.envelope_path = value;
      else if (key == "symbol_csv") c.symbol_out_path = value;
      else if (key == "window_csv") c.window_out_path = value;
      else unknown(section, key);
    } else {
      throw std::invalid_argument("config: unknown section [" + section + "]");
    }
  }
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::filesystem::path(path).stem().string());
}

void validate(const ExperimentConfig& c) {
  if (c.moduli.empty())
    throw std::invalid_argument("config: [group] moduli is required");
  Group g(c.moduli);

  if (c.kind != ExperimentKind::identities && c.kind != ExperimentKind::section6) {
    if (c.lattice_steps.size() != 2 * g.dim())
      throw std::invalid_argument(
          "config: [lattice] steps needs position and frequency entries (2d values)");
    Lattice check(phase_space(g), c.lattice_steps);  // throws on bad divisibility
  }

  switch (c.window) {
    case WindowKind::subgroup:
      if (c.window_steps.size() != g.dim())
        throw std::invalid_argument("config: subgroup window needs d step values");
      { Lattice k(g, c.window_steps); }
      break;
    case WindowKind::csv:
      if (c.window_path.empty())
        throw std::invalid_argument("config: csv window needs a path");
      break;
    default: break;
  }

  if (c.weight == WeightFamily::polynomial) {
    if (c.weight_s < 0.0)
      throw std::invalid_argument("config: polynomial weight needs s >= 0");
  } else {
    if (c.weight_a < 0.0 || c.weight_b <= 0.0 || c.weight_b > 1.0)
      throw std::invalid_argument("config: subexponential weight needs a >= 0, 0 < b <= 1");
  }

  switch (c.symbol) {
    case SymbolKind::shift:
      if (c.symbol_shift.size() != 2 * g.dim())
        throw std::invalid_argument("config: shift symbol needs a phase point (2d coords)");
      break;
    case SymbolKind::csv:
      if (c.symbol_path.empty())
        throw std::invalid_argument("config: csv symbol needs a path");
      break;
    case SymbolKind::random:
      if (c.symbol_decay < 0.0)
        throw std::invalid_argument("config: symbol decay must be >= 0");
      break;
    default: break;
  }

  if (c.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (c.kind == ExperimentKind::section6 && g.dim() != 1)
    throw std::invalid_argument("config: section6 needs a single cyclic factor");
  for (double tol : {c.tol_identity, c.tol_tight, c.tol_pinv, c.tol_rank}) {
    if (!(tol > 0.0)) throw std::invalid_argument("config: tolerances must be positive");
  }
  if (c.report_path.empty())
    throw std::invalid_argument("config: [output] report path must not be empty");
}

}  // namespace tfcalc
