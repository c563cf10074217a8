#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tmc {

// Base for all operation failures raised by the library. Diagnostics
// (validator output, parse errors) are returned as values, never thrown;
// exceptions are reserved for contract violations of an operation.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A dotted path or element id that does not exist in the document.
class UnknownRefError : public Error {
public:
    explicit UnknownRefError(const std::string& ref)
        : Error("unknown reference: '" + ref + "'"), ref_(ref) {}
    const std::string& ref() const { return ref_; }

private:
    std::string ref_;
};

// A trace mentions an event id that is not declared in the document.
class UnknownEventError : public Error {
public:
    explicit UnknownEventError(const std::string& id)
        : Error("unknown event: '" + id + "'"), id_(id) {}
    const std::string& event_id() const { return id_; }

private:
    std::string id_;
};

// A release/transfer/receive chain that does not end (or start) at a
// surviving node; carries the ids of the offending chain.
class DanglingChainError : public Error {
public:
    explicit DanglingChainError(std::vector<std::string> chain_ids)
        : Error(compose(chain_ids)), chain_ids_(std::move(chain_ids)) {}
    const std::vector<std::string>& chain_ids() const { return chain_ids_; }

private:
    static std::string compose(const std::vector<std::string>& ids) {
        std::string msg = "dangling release/transfer/receive chain:";
        for (const auto& id : ids) msg += " " + id;
        return msg;
    }
    std::vector<std::string> chain_ids_;
};

// Operation applied to a document in the wrong mode (e.g. mark_implicit on
// a model that still has release/transfer/receive nodes).
class ModeError : public Error {
public:
    using Error::Error;
};

// Requested view cannot be rendered (e.g. chronology view without a
// chronology declaration).
class ViewError : public Error {
public:
    using Error::Error;
};

// Operation requires a chronology and the document has none.
class NoChronologyError : public Error {
public:
    NoChronologyError() : Error("document declares no chronology") {}
};

}  // namespace tmc
