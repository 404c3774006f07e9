#pragma once

#include <string>
#include <utility>
#include <vector>

namespace satotate {

/// A named numeric table; every row has one value per column.
struct ReportTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
    bool operator==(const ReportTable& other) const;
};

enum class Comparator { LessEqual, GreaterEqual };

/// pass == (value <= threshold) or (value >= threshold).
struct ReportFlag {
    std::string name;
    double value = 0.0;
    Comparator comparator = Comparator::LessEqual;
    double threshold = 0.0;
    bool pass = false;

    bool consistent() const;
    bool operator==(const ReportFlag& other) const;
};

ReportFlag make_flag(std::string name, double value, Comparator cmp, double threshold);

struct VerificationReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<ReportTable> tables;
    std::vector<ReportFlag> flags;
    double runtime_seconds = 0.0;

    bool passed() const;
    const ReportTable* table(const std::string& table_name) const;
    /// Value of `column` in row `row` of `table_name`; throws if absent.
    double at(const std::string& table_name, std::size_t row, const std::string& column) const;
    const ReportFlag* flag(const std::string& flag_name) const;

    void add_parameter(std::string key, std::string value);
    void add_flag(std::string flag_name, double value, Comparator cmp, double threshold);

    /// Equality ignores runtime; NaN cells compare equal to NaN.
    bool operator==(const VerificationReport& other) const;
};

/// Exit status implied by a report: 0 iff every flag passes.
int exit_code(const VerificationReport& report);

}  // namespace satotate
