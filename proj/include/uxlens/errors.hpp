#pragma once

#include <stdexcept>
#include <string>

namespace uxlens {

// Base class for everything this tool throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- configuration / inputs -------------------------------------------------

class ConfigError : public Error {
public:
    using Error::Error;
};

class ConfigParseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class ConfigInvalidError : public ConfigError {
public:
    ConfigInvalidError(std::string field, const std::string& reason)
        : ConfigError(field + ": " + reason), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class VideoMissingError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class OverrideInvalidError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// --- provider / transport ---------------------------------------------------

class CredentialMissingError : public Error {
public:
    using Error::Error;
};

class TransportError : public Error {
public:
    using Error::Error;
};

class CacheMissError : public Error {
public:
    using Error::Error;
};

class AttachmentUnreadableError : public Error {
public:
    using Error::Error;
};

class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

class ZeroVectorError : public Error {
public:
    using Error::Error;
};

class AlignmentError : public Error {
public:
    using Error::Error;
};

// --- prompts / parsing ------------------------------------------------------

class MissingVariableError : public Error {
public:
    explicit MissingVariableError(const std::string& name)
        : Error("missing template variable: " + name), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class NoJsonFoundError : public Error {
public:
    using Error::Error;
};

class MalformedJsonError : public Error {
public:
    using Error::Error;
};

// --- pipeline stages ----------------------------------------------------------

class BudgetExceededError : public Error {
public:
    using Error::Error;
};

// Model output failed schema validation even after the repair attempt.
class SchemaError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

} // namespace uxlens
