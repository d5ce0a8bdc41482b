#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace trendskew {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter record or argument violates its documented invariants.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Input data could not be read or does not describe a valid series.
class DataError : public Error {
public:
    using Error::Error;
};

/// Failures while reading a `date,price` CSV file.
class CsvError : public DataError {
public:
    enum class Kind {
        missing_file,
        malformed_row,
        non_increasing_dates,
        non_positive_price,
    };

    CsvError(Kind kind, std::string path, std::size_t line, const std::string& what)
        : DataError(what), kind_(kind), path_(std::move(path)), line_(line) {}

    Kind kind() const noexcept { return kind_; }
    const std::string& path() const noexcept { return path_; }
    // 1-based line number in the file; 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    Kind kind_;
    std::string path_;
    std::size_t line_;
};

/// A statistic or normalization is undefined for the given input
/// (zero variance, vertical regression line, all-zero aggregate).
class DegenerateError : public Error {
public:
    using Error::Error;
};

}  // namespace trendskew
