#include "satotate/report.hpp"

#include <cmath>
#include <stdexcept>

namespace satotate {

namespace {

bool same_number(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

}  // namespace

void ReportTable::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("report table '" + name + "': row width mismatch");
    }
    rows.push_back(std::move(row));
}

bool ReportTable::operator==(const ReportTable& other) const {
    if (name != other.name || columns != other.columns || rows.size() != other.rows.size()) return false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != other.rows[i].size()) return false;
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            if (!same_number(rows[i][j], other.rows[i][j])) return false;
        }
    }
    return true;
}

bool ReportFlag::consistent() const {
    const bool expected = comparator == Comparator::LessEqual ? value <= threshold : value >= threshold;
    return expected == pass;
}

bool ReportFlag::operator==(const ReportFlag& other) const {
    return name == other.name && same_number(value, other.value) && comparator == other.comparator &&
           same_number(threshold, other.threshold) && pass == other.pass;
}

ReportFlag make_flag(std::string name, double value, Comparator cmp, double threshold) {
    ReportFlag f{std::move(name), value, cmp, threshold, false};
    f.pass = cmp == Comparator::LessEqual ? value <= threshold : value >= threshold;
    return f;
}

bool VerificationReport::passed() const {
    for (const auto& f : flags) {
        if (!f.pass) return false;
    }
    return true;
}

const ReportTable* VerificationReport::table(const std::string& table_name) const {
    for (const auto& t : tables) {
        if (t.name == table_name) return &t;
    }
    return nullptr;
}

double VerificationReport::at(const std::string& table_name, std::size_t row,
                              const std::string& column) const {
    const ReportTable* t = table(table_name);
    if (t == nullptr) throw std::out_of_range("no table '" + table_name + "' in " + name);
    if (row >= t->rows.size()) throw std::out_of_range("row out of range in " + table_name);
    for (std::size_t j = 0; j < t->columns.size(); ++j) {
        if (t->columns[j] == column) return t->rows[row][j];
    }
    throw std::out_of_range("no column '" + column + "' in " + table_name);
}

const ReportFlag* VerificationReport::flag(const std::string& flag_name) const {
    for (const auto& f : flags) {
        if (f.name == flag_name) return &f;
    }
    return nullptr;
}

void VerificationReport::add_parameter(std::string key, std::string value) {
    parameters.emplace_back(std::move(key), std::move(value));
}

void VerificationReport::add_flag(std::string flag_name, double value, Comparator cmp,
                                  double threshold) {
    flags.push_back(make_flag(std::move(flag_name), value, cmp, threshold));
}

bool VerificationReport::operator==(const VerificationReport& other) const {
    return name == other.name && parameters == other.parameters && tables == other.tables &&
           flags == other.flags;
}

int exit_code(const VerificationReport& report) { return report.passed() ? 0 : 1; }

}  // namespace satotate
