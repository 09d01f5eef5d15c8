#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace riskmap {

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file could not be opened or read.
class IoError : public Error {
public:
    using Error::Error;
};

/// Input bytes are not the expected file format (bad JSON, missing key, wrong type).
class ParseError : public Error {
public:
    ParseError(const std::string& path, const std::string& message)
        : Error(path.empty() ? message : path + ": " + message), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// A numeric argument fell outside its mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two aligned vectors (or a vector and a matrix dimension) disagree in size.
class LengthMismatch : public Error {
public:
    using Error::Error;
};

/// The severity denominator is zero, so the weighted average is undefined.
class NoApplicableThreats : public Error {
public:
    NoApplicableThreats()
        : Error("no applicable threats: sum of adjusted severities is zero") {}
};

class UnsupportedConfig : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class EmptySample : public Error {
public:
    EmptySample() : Error("percentile of an empty sample") {}
};

/// An assessment does not line up with the catalog it is scored against.
class BindError : public Error {
public:
    BindError(std::vector<std::string> missing, std::vector<std::string> extra,
              std::vector<std::string> invalid);

    const std::vector<std::string>& missing_ids() const noexcept { return missing_; }
    const std::vector<std::string>& extra_ids() const noexcept { return extra_; }
    const std::vector<std::string>& invalid_entries() const noexcept { return invalid_; }

private:
    std::vector<std::string> missing_;
    std::vector<std::string> extra_;
    std::vector<std::string> invalid_;
};

}  // namespace riskmap
