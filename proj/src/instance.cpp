#include "mtvrp/instance.hpp"

namespace mtvrp {

std::vector<std::vector<int>> cost_matrix_from_coords(const std::vector<Point>& coords) {
    size_t m = coords.size();
    std::vector<std::vector<int>> cost(m, std::vector<int>(m, 0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
            int c = rounded_euclidean(coords[i], coords[j]);
            cost[i][j] = c;
            cost[j][i] = c;
        }
    return cost;
}

Instance make_instance(std::string name, int capacity, int max_trips,
                       std::vector<Point> coords, std::vector<int> demand,
                       PrecedenceMatrix pm) {
    Instance inst;
    inst.name = std::move(name);
    inst.n = static_cast<int>(coords.size()) - 1;
    inst.capacity = capacity;
    inst.max_trips = max_trips;
    inst.cost = cost_matrix_from_coords(coords);
    inst.coords = std::move(coords);
    inst.demand = std::move(demand);
    inst.pm = std::move(pm);
    return inst;
}

}  // namespace mtvrp
