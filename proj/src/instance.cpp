#include "duo/instance.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "duo/kernels.hpp"
#include "json.hpp"

namespace duo {

namespace {

void require_target_count(int n_targets) {
    if (n_targets < 6)
        throw std::invalid_argument("n_targets must be at least 6, got " +
                                    std::to_string(n_targets));
    if (n_targets % 2 != 0)
        throw std::invalid_argument("n_targets must be even, got " + std::to_string(n_targets));
}

std::vector<double> costs_from_points(const std::vector<Point>& pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = pts[i].x;
        ys[i] = pts[i].y;
    }
    std::vector<double> costs(static_cast<std::size_t>(n) * n);
    kernels::euclidean_matrix(xs.data(), ys.data(), n, costs.data());
    return costs;
}

// 17 significant digits round-trip a double exactly.
std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Instance generate_random(int n_targets, std::uint64_t seed, double grid_size) {
    require_target_count(n_targets);
    if (!(grid_size > 0.0))
        throw std::invalid_argument("grid_size must be positive");

    // Coordinates are derived from raw engine output to stay independent of
    // the standard library's distribution implementations.
    std::mt19937_64 eng(seed);
    auto unit = [&eng]() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };

    std::vector<Point> pts(n_targets);
    for (auto& p : pts) {
        p.x = unit() * grid_size;
        p.y = unit() * grid_size;
    }

    Instance inst;
    inst.id = "rand-n" + std::to_string(n_targets) + "-s" + std::to_string(seed);
    inst.n_targets = n_targets;
    inst.costs = costs_from_points(pts);
    inst.points = std::move(pts);
    return inst;
}

Instance from_points(std::vector<Point> points, std::string id) {
    const int n = static_cast<int>(points.size());
    require_target_count(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dx = points[i].x - points[j].x;
            const double dy = points[i].y - points[j].y;
            if (std::sqrt(dx * dx + dy * dy) < 1e-9)
                throw std::invalid_argument("duplicate points: targets " + std::to_string(i) +
                                            " and " + std::to_string(j) + " coincide");
        }
    }
    Instance inst;
    inst.id = std::move(id);
    inst.n_targets = n;
    inst.costs = costs_from_points(points);
    inst.points = std::move(points);
    check_instance(inst);
    return inst;
}

Instance from_cost_matrix(std::vector<std::vector<double>> costs, std::string id) {
    const int n = static_cast<int>(costs.size());
    Instance inst;
    inst.id = std::move(id);
    inst.n_targets = n;
    inst.costs.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : costs) {
        if (static_cast<int>(row.size()) != n)
            throw ValidationError("cost matrix is not square");
        inst.costs.insert(inst.costs.end(), row.begin(), row.end());
    }
    check_instance(inst);
    return inst;
}

void check_instance(const Instance& inst) {
    const int n = inst.n_targets;
    if (n < 6 || n % 2 != 0)
        throw ValidationError("n_targets must be even and at least 6, got " + std::to_string(n));
    if (inst.costs.size() != static_cast<std::size_t>(n) * n)
        throw ValidationError("cost matrix size does not match n_targets");

    for (int i = 0; i < n; ++i) {
        if (inst.cost(i, i) != 0.0)
            throw ValidationError("nonzero diagonal cost at target " + std::to_string(i));
        for (int j = i + 1; j < n; ++j) {
            const double cij = inst.cost(i, j);
            if (!(cij >= 0.0) || !std::isfinite(cij))
                throw ValidationError("negative or non-finite cost at (" + std::to_string(i) +
                                      ", " + std::to_string(j) + ")");
            if (cij != inst.cost(j, i))
                throw ValidationError("asymmetric cost at (" + std::to_string(i) + ", " +
                                      std::to_string(j) + ")");
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double base = inst.cost(i, j);
            const double* row_j = inst.cost_row(j);
            const double* row_i = inst.cost_row(i);
            for (int k = 0; k < n; ++k)
                if (row_i[k] > base + row_j[k] + kCostEps)
                    throw ValidationError("triangle inequality violated for targets (" +
                                          std::to_string(i) + ", " + std::to_string(j) + ", " +
                                          std::to_string(k) + ")");
        }

    if (inst.points) {
        if (static_cast<int>(inst.points->size()) != n)
            throw ValidationError("points list size does not match n_targets");
        const auto& pts = *inst.points;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double dx = pts[i].x - pts[j].x;
                const double dy = pts[i].y - pts[j].y;
                if (std::abs(std::sqrt(dx * dx + dy * dy) - inst.cost(i, j)) > kCostEps)
                    throw ValidationError("cost (" + std::to_string(i) + ", " + std::to_string(j) +
                                          ") does not match point distance");
            }
    }
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"id\": " << nlohmann::json(inst.id).dump() << ",\n";
    out << "  \"n_targets\": " << inst.n_targets;
    if (inst.points) {
        out << ",\n  \"points\": [";
        for (std::size_t i = 0; i < inst.points->size(); ++i) {
            const auto& p = (*inst.points)[i];
            out << (i ? ", " : "") << '[' << fmt_double(p.x) << ", " << fmt_double(p.y) << ']';
        }
        out << ']';
    } else {
        out << ",\n  \"costs\": [\n";
        for (int i = 0; i < inst.n_targets; ++i) {
            out << "    [";
            for (int j = 0; j < inst.n_targets; ++j)
                out << (j ? ", " : "") << fmt_double(inst.cost(i, j));
            out << (i + 1 < inst.n_targets ? "],\n" : "]\n");
        }
        out << "  ]";
    }
    out << "\n}\n";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open " + path + " for writing");
    f << out.str();
    if (!f) throw ParseError("failed to write " + path);
}

Instance load_instance(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open " + path);

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }

    try {
        if (!j.is_object()) throw ParseError(path + ": top-level value must be an object");
        if (!j.contains("id") || !j["id"].is_string())
            throw ParseError(path + ": missing or non-string field \"id\"");
        if (!j.contains("n_targets") || !j["n_targets"].is_number_integer())
            throw ParseError(path + ": missing or non-integer field \"n_targets\"");
        const bool has_points = j.contains("points");
        const bool has_costs = j.contains("costs");
        if (!has_points && !has_costs)
            throw ParseError(path + ": at least one of \"points\"/\"costs\" is required");

        Instance inst;
        inst.id = j["id"].get<std::string>();
        inst.n_targets = j["n_targets"].get<int>();

        std::vector<std::vector<double>> file_costs;
        if (has_costs) file_costs = j["costs"].get<std::vector<std::vector<double>>>();

        if (has_points) {
            std::vector<Point> pts;
            for (const auto& e : j["points"]) {
                if (!e.is_array() || e.size() != 2)
                    throw ParseError(path + ": each entry of \"points\" must be an [x, y] pair");
                pts.push_back({e[0].get<double>(), e[1].get<double>()});
            }
            // Points are authoritative: costs are always derived from them,
            // and a costs field, when also present, is only cross-checked.
            inst.points = std::move(pts);
            if (static_cast<int>(inst.points->size()) != inst.n_targets)
                throw ValidationError(path + ": points list size does not match n_targets");
            inst.costs = costs_from_points(*inst.points);
            if (has_costs) {
                if (static_cast<int>(file_costs.size()) != inst.n_targets)
                    throw ValidationError(path + ": cost matrix size does not match n_targets");
                for (int r = 0; r < inst.n_targets; ++r) {
                    if (static_cast<int>(file_costs[r].size()) != inst.n_targets)
                        throw ValidationError(path + ": cost matrix row " + std::to_string(r) +
                                              " has wrong length");
                    for (int c = 0; c < inst.n_targets; ++c)
                        if (std::abs(file_costs[r][c] - inst.cost(r, c)) > kCostEps)
                            throw ValidationError(path + ": costs field disagrees with point" +
                                                  " distances at (" + std::to_string(r) + ", " +
                                                  std::to_string(c) + ")");
                }
            }
        } else {
            if (static_cast<int>(file_costs.size()) != inst.n_targets)
                throw ValidationError(path + ": cost matrix size does not match n_targets");
            for (const auto& row : file_costs) {
                if (static_cast<int>(row.size()) != inst.n_targets)
                    throw ValidationError(path + ": cost matrix is not square");
                inst.costs.insert(inst.costs.end(), row.begin(), row.end());
            }
        }

        check_instance(inst);
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace duo
