#include "tfcalc/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace tfcalc {

namespace {
std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << std::setprecision(17);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) fields.push_back(item);
  return fields;
}

bool skippable(const std::string& line) {
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) return c == '#';
  }
  return true;
}
}  // namespace

void save_signal_csv(const std::string& path, const Signal& f) {
  auto out = open_out(path);
  out << "index,re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << i << ',' << f[i].real() << ',' << f[i].imag() << '\n';
  }
}

Signal load_signal_csv(const std::string& path, const Group& g, Side side) {
  auto in = open_in(path);
  Signal f(g, side);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    auto fields = split_fields(line);
    if (first && !fields.empty() && fields[0] == "index") {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() != 3)
      throw std::runtime_error("signal csv: expected 'index,re,im' rows in " + path);
    std::size_t i = std::stoul(fields[0]);
    if (i >= f.size()) throw std::runtime_error("signal csv: index out of range in " + path);
    f[i] = cd(std::stod(fields[1]), std::stod(fields[2]));
  }
  return f;
}

void save_symbol_csv(const std::string& path, const Symbol& s) {
  auto out = open_out(path);
  out << "x_index,xi_index,re,im\n";
  const std::size_t n = s.group().order();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t xi = 0; xi < n; ++xi) {
      cd v = s.data().at(x, xi);
      out << x << ',' << xi << ',' << v.real() << ',' << v.imag() << '\n';
    }
  }
}

Symbol load_symbol_csv(const std::string& path, const Group& g) {
  auto in = open_in(path);
  PhaseFunction p(g, PhaseDomain::time_freq);
  const std::size_t n = g.order();
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    auto fields = split_fields(line);
    if (first && !fields.empty() && fields[0] == "x_index") {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() != 4)
      throw std::runtime_error("symbol csv: expected 'x,xi,re,im' rows in " + path);
    std::size_t x = std::stoul(fields[0]);
    std::size_t xi = std::stoul(fields[1]);
    if (x >= n || xi >= n)
      throw std::runtime_error("symbol csv: index out of range in " + path);
    p[p.index(x, xi)] = cd(std::stod(fields[2]), std::stod(fields[3]));
  }
  return Symbol(std::move(p));
}

void save_series_csv(const std::string& path, const Group& index_group,
                     const std::vector<std::pair<std::string, std::vector<double>>>& columns) {
  auto out = open_out(path);
  out << "index";
  for (std::size_t j = 0; j < index_group.dim(); ++j) out << ",c" << j;
  out << ",metric";
  for (const auto& [name, values] : columns) {
    if (values.size() != index_group.order())
      throw std::invalid_argument("series csv: column '" + name + "' has wrong length");
    out << ',' << name;
  }
  out << '\n';
  for (std::size_t k = 0; k < index_group.order(); ++k) {
    out << k;
    for (int c : index_group.coords(k)) out << ',' << c;
    out << ',' << index_group.metric(k);
    for (const auto& [name, values] : columns) out << ',' << values[k];
    out << '\n';
  }
}

}  // namespace tfcalc
