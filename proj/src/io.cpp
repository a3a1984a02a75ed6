#include "dcf2d/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dcf2d {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_snapshot(const std::vector<Individual>& pop, std::ostream& os, int generation,
                    const std::string& pop_kind, int dim, int n_obj, int n_con,
                    int direction_flag, bool header) {
  if (header) {
    os << "gen,pop_kind,member_index";
    for (int d = 1; d <= dim; ++d) os << ",x_" << d;
    for (int m = 1; m <= n_obj; ++m) os << ",f_" << m;
    for (int c = 1; c <= n_con; ++c) os << ",c_" << c;
    os << ",cv,direction_flag\n";
  }
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const auto& ind = pop[i];
    os << generation << ',' << pop_kind << ',' << i;
    for (double v : ind.x) os << ',' << format_double(v);
    for (double v : ind.f) os << ',' << format_double(v);
    for (double v : ind.c) os << ',' << format_double(v);
    os << ',' << format_double(ind.cv) << ',' << direction_flag << '\n';
  }
}

std::vector<Individual> read_snapshot(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("read_snapshot: empty file");
  // derive layout from the header
  int dim = 0, n_obj = 0, n_con = 0;
  {
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) {
      if (col.rfind("x_", 0) == 0) ++dim;
      else if (col.rfind("f_", 0) == 0) ++n_obj;
      else if (col.rfind("c_", 0) == 0 && col != "cv") ++n_con;
    }
  }
  std::vector<Individual> pop;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ','); // gen
    std::getline(ss, cell, ','); // pop_kind
    std::getline(ss, cell, ','); // member_index
    Individual ind;
    auto take = [&](int count, std::vector<double>& out) {
      for (int i = 0; i < count; ++i) {
        if (!std::getline(ss, cell, ',')) throw std::runtime_error("read_snapshot: short row");
        out.push_back(std::strtod(cell.c_str(), nullptr));
      }
    };
    take(dim, ind.x);
    take(n_obj, ind.f);
    take(n_con, ind.c);
    if (!std::getline(ss, cell, ',')) throw std::runtime_error("read_snapshot: short row");
    ind.cv = std::strtod(cell.c_str(), nullptr);
    pop.push_back(std::move(ind));
  }
  return pop;
}

void write_events(const std::vector<Event>& events, std::ostream& os) {
  os << "generation,fe,event,ap,detail\n";
  for (const auto& e : events)
    os << e.generation << ',' << e.fe << ',' << to_string(e.kind) << ',' << e.ap << ','
       << e.detail << '\n';
}

void write_metrics(const std::vector<MetricRow>& rows, std::ostream& os) {
  os << "generation,fe,igd_plus,hv,feasible_ratio\n";
  for (const auto& r : rows)
    os << r.generation << ',' << r.fe << ',' << format_double(r.igd_plus) << ','
       << format_double(r.hv) << ',' << format_double(r.feasible_ratio) << '\n';
}

} // namespace dcf2d
