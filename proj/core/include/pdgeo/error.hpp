#ifndef PDGEO_ERROR_HPP
#define PDGEO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pdgeo {

// Computation error carrying the module and operation that raised it, so the
// CLI can emit structured error objects.
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string op, std::string reason)
        : std::runtime_error(module + "." + op + ": " + reason),
          module_(std::move(module)),
          op_(std::move(op)),
          reason_(std::move(reason)) {}

    const std::string& module() const { return module_; }
    const std::string& op() const { return op_; }
    const std::string& reason() const { return reason_; }

private:
    std::string module_;
    std::string op_;
    std::string reason_;
};

}  // namespace pdgeo

#endif  // PDGEO_ERROR_HPP
