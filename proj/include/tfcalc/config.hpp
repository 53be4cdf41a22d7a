#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tfcalc {

enum class WindowKind { delta, subgroup, gaussian, csv };
enum class WeightFamily { polynomial, subexponential };
enum class SymbolKind { identity, shift, random, csv };
enum class ExperimentKind { identities, frames, almost_diag, wiener, section6 };

/// Declarative experiment description, read from an INI-style file with
/// sections [group], [lattice], [window], [weight], [symbol], [experiment],
/// [tolerances], [output]; see the README for the full key list.
struct ExperimentConfig {
  std::string name;

  std::vector<int> moduli;          // [group] moduli = 12  |  4 6
  std::vector<int> lattice_steps;   // [lattice] steps = position then frequency

  WindowKind window = WindowKind::gaussian;  // [window] kind = ...
  std::vector<int> window_steps;             // subgroup window steps
  std::string window_path;                   // csv window

  WeightFamily weight = WeightFamily::polynomial;  // [weight] kind = ...
  double weight_s = 0.0;                           // polynomial exponent
  double weight_a = 0.0, weight_b = 0.5;           // subexponential exp(a d^b)

  SymbolKind symbol = SymbolKind::random;  // [symbol] kind = ...
  std::vector<int> symbol_shift;           // phase-point coords for kind = shift
  double symbol_decay = 0.7;               // spreading envelope rate
  std::string symbol_path;                 // csv symbol

  ExperimentKind kind = ExperimentKind::identities;  // [experiment] kind = ...
  std::uint64_t seed = 1;
  int trials = 100;

  double tol_identity = 1e-10;  // [tolerances] identity / tight / pinv / rank
  double tol_tight = 1e-10;
  double tol_pinv = 1e-8;
  double tol_rank = 1e-10;

  std::string report_path = "report.json";  // [output] report / envelopes / ...
  std::string envelope_path;
  std::string symbol_out_path;
  std::string window_out_path;
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& name);

/// Full validation: divisibility, nonzero windows, weight admissibility,
/// symbol spec coherence.  Throws std::invalid_argument with a diagnostic.
void validate(const ExperimentConfig& c);

std::string to_string(ExperimentKind k);
std::string to_string(WindowKind k);
std::string to_string(WeightFamily k);
std::string to_string(SymbolKind k);

}  // namespace tfcalc
