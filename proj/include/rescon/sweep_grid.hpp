#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rescon/errors.hpp"

namespace rescon {

struct Axis {
    std::string name;
    std::vector<double> values;

    static Axis linspace(std::string name, double min, double max,
                         std::size_t count);

    bool operator==(const Axis&) const = default;
};

// Rectangular grid of scalar results with axis metadata and a per-cell
// mask reason ("" means the cell is valid).
class SweepGrid {
  public:
    SweepGrid(Axis rows, Axis cols);

    const Axis& rows() const { return rows_; }
    const Axis& cols() const { return cols_; }
    std::size_t row_count() const { return rows_.values.size(); }
    std::size_t col_count() const { return cols_.values.size(); }

    void set(std::size_t i, std::size_t j, double value);
    void mask(std::size_t i, std::size_t j, std::string reason);

    bool is_masked(std::size_t i, std::size_t j) const;
    const std::string& mask_reason(std::size_t i, std::size_t j) const;
    // nullopt when masked.
    std::optional<double> value(std::size_t i, std::size_t j) const;
    // Valid cells only; throws on masked access.
    double at(std::size_t i, std::size_t j) const;

    std::size_t masked_count() const;

    // Header row with column axis values, one matrix row per line,
    // masked cells rendered as NA. Shortest round-trip float format,
    // so output is byte-stable.
    void to_csv(std::ostream& os) const;
    std::string to_csv() const;

    nlohmann::json to_json() const;
    static SweepGrid from_json(const nlohmann::json& j);

    // Equality ignores stored values of masked cells (their sentinel is
    // NaN, which never compares equal to itself).
    bool operator==(const SweepGrid& other) const;

  private:
    std::size_t index(std::size_t i, std::size_t j) const;

    Axis rows_;
    Axis cols_;
    std::vector<double> values_;      // row-major
    std::vector<std::string> masks_;  // reason codes, "" = valid
};

// Shortest representation that round-trips exactly through a double.
std::string format_double(double v);

}  // namespace rescon
