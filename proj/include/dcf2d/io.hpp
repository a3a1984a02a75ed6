#ifndef DCF2D_IO_HPP
#define DCF2D_IO_HPP

#include "dcf2d/engine.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dcf2d {

// Renders doubles with enough digits that parsing the text reproduces the
// binary value exactly.
std::string format_double(double v);

// Snapshot schema: gen,pop_kind,member_index,x_1..x_D,f_1..f_M,c_1..c_K,cv,
// direction_flag (0 none, 1 positive, -1 negative).
void write_snapshot(const std::vector<Individual>& pop, std::ostream& os, int generation,
                    const std::string& pop_kind, int dim, int n_obj, int n_con,
                    int direction_flag = 0, bool header = true);

// Reads back a snapshot written by write_snapshot (any pop_kind).
std::vector<Individual> read_snapshot(std::istream& is);

void write_events(const std::vector<Event>& events, std::ostream& os);
void write_metrics(const std::vector<MetricRow>& rows, std::ostream& os);

} // namespace dcf2d

#endif
