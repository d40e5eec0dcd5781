#pragma once

#include <stdexcept>
#include <string>

namespace bc {

// Base class for all boardcrawl errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Broken wiring between stages: duplicate ids, rank/seal mismatch, ...
class StructuralError : public Error {
public:
    using Error::Error;
};

// Filesystem or serialization failure.
class IoError : public Error {
public:
    using Error::Error;
};

// Invalid user-supplied configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A stored record failed validation on read; names the failing field.
class CorruptRecordError : public Error {
public:
    CorruptRecordError(std::string field, const std::string& what)
        : Error(what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// The seed page could not be fetched or parsed; the crawl cannot start.
class SeedError : public Error {
public:
    using Error::Error;
};

// A query tokenized to nothing (empty or stopwords only).
class EmptyQueryError : public Error {
public:
    using Error::Error;
};

// A fixture server could not bind its port.
class PortInUseError : public Error {
public:
    using Error::Error;
};

}  // namespace bc
