#pragma once

#include <string>

#include "mtvrp/instance.hpp"
#include "mtvrp/solution.hpp"

namespace mtvrp {

// Plain-text instance format (whitespace delimited, coordinates with six
// decimal places, cost matrix re-derived from coordinates on read):
//
//   NAME <string>
//   DIMENSION <n + 1>
//   CAPACITY <Q>
//   MAX_TRIPS <p>
//   NODE_COORD_SECTION
//   <id 0..n> <x> <y>          (one line per node, depot id 0)
//   DEMAND_SECTION
//   <id 1..n> <demand>
//   PRECEDENCE_SECTION
//   <i> <j>                    (one pair per line, i < j)
//   EOF
//
// Parse failures throw std::runtime_error with the offending line number.
std::string instance_to_string(const Instance& inst);
Instance instance_from_string(const std::string& text);
void write_instance(const Instance& inst, const std::string& path);
Instance read_instance(const std::string& path);

// Solution files: a COST header followed by one line per trip with customer
// ids in visit order.
std::string solution_to_string(const Solution& sol);
Solution solution_from_string(const std::string& text);
void write_solution(const Solution& sol, const std::string& path);
Solution read_solution(const std::string& path);

}  // namespace mtvrp
