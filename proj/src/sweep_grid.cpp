#include "rescon/sweep_grid.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace rescon {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Axis Axis::linspace(std::string name, double min, double max,
                    std::size_t count) {
    if (count == 0) {
        throw InputError("axis needs at least one value");
    }
    std::vector<double> values(count);
    if (count == 1) {
        values[0] = min;
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            values[i] = min + (max - min) * static_cast<double>(i) /
                                  static_cast<double>(count - 1);
        }
    }
    return Axis{std::move(name), std::move(values)};
}

SweepGrid::SweepGrid(Axis rows, Axis cols)
    : rows_(std::move(rows)),
      cols_(std::move(cols)),
      values_(rows_.values.size() * cols_.values.size(), 0.0),
      masks_(rows_.values.size() * cols_.values.size()) {
    if (rows_.values.empty() || cols_.values.empty()) {
        throw InputError("sweep grid axes must be non-empty");
    }
}

std::size_t SweepGrid::index(std::size_t i, std::size_t j) const {
    if (i >= row_count() || j >= col_count()) {
        throw InputError("sweep grid index out of range");
    }
    return i * col_count() + j;
}

void SweepGrid::set(std::size_t i, std::size_t j, double value) {
    const std::size_t k = index(i, j);
    values_[k] = value;
    masks_[k].clear();
}

void SweepGrid::mask(std::size_t i, std::size_t j, std::string reason) {
    const std::size_t k = index(i, j);
    values_[k] = std::numeric_limits<double>::quiet_NaN();
    masks_[k] = reason.empty() ? "masked" : std::move(reason);
}

bool SweepGrid::is_masked(std::size_t i, std::size_t j) const {
    return !masks_[index(i, j)].empty();
}

const std::string& SweepGrid::mask_reason(std::size_t i, std::size_t j) const {
    return masks_[index(i, j)];
}

std::optional<double> SweepGrid::value(std::size_t i, std::size_t j) const {
    const std::size_t k = index(i, j);
    if (!masks_[k].empty()) {
        return std::nullopt;
    }
    return values_[k];
}

double SweepGrid::at(std::size_t i, std::size_t j) const {
    const auto v = value(i, j);
    if (!v) {
        throw InputError("access to masked sweep cell");
    }
    return *v;
}

bool SweepGrid::operator==(const SweepGrid& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_ || masks_ != other.masks_) {
        return false;
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (masks_[k].empty() && values_[k] != other.values_[k]) {
            return false;
        }
    }
    return true;
}

std::size_t SweepGrid::masked_count() const {
    std::size_t n = 0;
    for (const auto& m : masks_) {
        n += m.empty() ? 0 : 1;
    }
    return n;
}

void SweepGrid::to_csv(std::ostream& os) const {
    os << rows_.name << "\\" << cols_.name;
    for (double c : cols_.values) {
        os << "," << format_double(c);
    }
    os << "\n";
    for (std::size_t i = 0; i < row_count(); ++i) {
        os << format_double(rows_.values[i]);
        for (std::size_t j = 0; j < col_count(); ++j) {
            const std::size_t k = i * col_count() + j;
            os << ",";
            if (masks_[k].empty()) {
                os << format_double(values_[k]);
            } else {
                os << "NA";
            }
        }
        os << "\n";
    }
}

std::string SweepGrid::to_csv() const {
    std::ostringstream ss;
    to_csv(ss);
    return ss.str();
}

nlohmann::json SweepGrid::to_json() const {
    nlohmann::json j;
    j["row_axis"] = {{"name", rows_.name}, {"values", rows_.values}};
    j["col_axis"] = {{"name", cols_.name}, {"values", cols_.values}};
    nlohmann::json values = nlohmann::json::array();
    nlohmann::json masks = nlohmann::json::array();
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (masks_[k].empty()) {
            values.push_back(values_[k]);
        } else {
            values.push_back(nullptr);
        }
        masks.push_back(masks_[k]);
    }
    j["values"] = std::move(values);
    j["mask"] = std::move(masks);
    return j;
}

SweepGrid SweepGrid::from_json(const nlohmann::json& j) {
    try {
        Axis rows{j.at("row_axis").at("name").get<std::string>(),
                  j.at("row_axis").at("values").get<std::vector<double>>()};
        Axis cols{j.at("col_axis").at("name").get<std::string>(),
                  j.at("col_axis").at("values").get<std::vector<double>>()};
        SweepGrid grid(std::move(rows), std::move(cols));
        const auto& values = j.at("values");
        const auto& masks = j.at("mask");
        if (values.size() != grid.values_.size() ||
            masks.size() != grid.values_.size()) {
            throw InputError("sweep grid JSON has inconsistent sizes");
        }
        for (std::size_t k = 0; k < grid.values_.size(); ++k) {
            const std::string reason = masks[k].get<std::string>();
            if (reason.empty()) {
                grid.values_[k] = values[k].get<double>();
            } else {
                grid.values_[k] = std::numeric_limits<double>::quiet_NaN();
                grid.masks_[k] = reason;
            }
        }
        return grid;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("sweep grid JSON: ") + e.what());
    }
}

}  // namespace rescon
