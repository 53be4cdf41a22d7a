#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tfcalc/psido.hpp"
#include "tfcalc/signal.hpp"

namespace tfcalc {

/// Signals travel as CSV rows "index,re,im"; symbols as
/// "x_index,xi_index,re,im" over the enumeration order.
void save_signal_csv(const std::string& path, const Signal& f);
Signal load_signal_csv(const std::string& path, const Group& g,
                       Side side = Side::group);

void save_symbol_csv(const std::string& path, const Symbol& s);
Symbol load_symbol_csv(const std::string& path, const Group& g);

/// Envelope-style table: one row per index-group element with its coordinates
/// and metric, then one column per named series.
void save_series_csv(const std::string& path, const Group& index_group,
                     const std::vector<std::pair<std::string, std::vector<double>>>& columns);

}  // namespace tfcalc
