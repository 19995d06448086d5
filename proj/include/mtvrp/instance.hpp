#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mtvrp {

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

// Strictly upper-triangular AND-precedence relation over customers 1..n.
// requires(i, j) == true means customer i must be visited before customer j
// (same trip or an earlier trip); only pairs with 1 <= i < j <= n can be set.
class PrecedenceMatrix {
public:
    PrecedenceMatrix() = default;
    explicit PrecedenceMatrix(int n) : n_(n), bits_(static_cast<size_t>(n) * (n + 1) / 2, 0) {
        if (n < 0) throw std::invalid_argument("PrecedenceMatrix: negative size");
    }

    int n() const { return n_; }

    bool requires_before(int i, int j) const {
        if (i < 1 || j < 1 || i > n_ || j > n_ || i >= j) return false;
        return bits_[index(i, j)] != 0;
    }

    void set(int i, int j, bool value = true) {
        if (i < 1 || j < 1 || i > n_ || j > n_)
            throw std::out_of_range("PrecedenceMatrix::set: node out of range");
        if (i >= j)
            throw std::invalid_argument("PrecedenceMatrix::set: pair must satisfy i < j");
        bits_[index(i, j)] = value ? 1 : 0;
    }

    // AND_j: all i with i -> j.
    std::vector<int> predecessors_of(int j) const {
        std::vector<int> out;
        for (int i = 1; i < j; ++i)
            if (requires_before(i, j)) out.push_back(i);
        return out;
    }

    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 1; i <= n_; ++i)
            for (int j = i + 1; j <= n_; ++j)
                if (bits_[index(i, j)]) out.emplace_back(i, j);
        return out;
    }

    size_t count() const {
        size_t c = 0;
        for (auto b : bits_) c += b;
        return c;
    }

    bool operator==(const PrecedenceMatrix&) const = default;

private:
    size_t index(int i, int j) const {
        // Pairs (i, j) with 1 <= i < j <= n, packed row by row.
        size_t row = static_cast<size_t>(i) - 1;
        size_t n = static_cast<size_t>(n_);
        return row * n - row * (row + 1) / 2 + (static_cast<size_t>(j) - i - 1);
    }

    int n_ = 0;
    std::vector<uint8_t> bits_;
};

// Euclidean distance rounded half away from zero to the nearest integer.
inline int rounded_euclidean(const Point& a, const Point& b) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return static_cast<int>(std::llround(std::sqrt(dx * dx + dy * dy)));
}

std::vector<std::vector<int>> cost_matrix_from_coords(const std::vector<Point>& coords);

// One routing instance. Node 0 is the depot; customers are 1..n.
struct Instance {
    std::string name;
    int n = 0;          // number of customers
    int capacity = 0;   // vehicle capacity Q, identical for every trip
    int max_trips = 0;  // p, maximum number of trips
    std::vector<Point> coords;            // size n+1, [0] = depot
    std::vector<int> demand;              // size n+1, demand[0] == 0
    std::vector<std::vector<int>> cost;   // (n+1) x (n+1) symmetric, zero diagonal
    PrecedenceMatrix pm;

    bool operator==(const Instance&) const = default;
};

// Convenience constructor used by generators and tests: derives the cost
// matrix from coordinates.
Instance make_instance(std::string name, int capacity, int max_trips,
                       std::vector<Point> coords, std::vector<int> demand,
                       PrecedenceMatrix pm);

}  // namespace mtvrp
