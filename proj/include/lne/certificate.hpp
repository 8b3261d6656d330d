#ifndef LNE_CERTIFICATE_HPP
#define LNE_CERTIFICATE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lne {

// Evidence that the input graph cannot be the resolution graph of a
// Lipschitz normally embedded germ. This is ordinary data, not an exception:
// callers report the violated conditions and stop the pipeline.
struct NotLneCertificate {
    struct Violation {
        std::string vertex;  // offending vertex id, empty for global conditions
        std::string rule;    // human-readable statement of the failed condition
    };

    std::string stage;  // pipeline stage that detected the failure
    std::vector<Violation> violations;

    std::string describe() const;
};

// Outcome of a pipeline stage: either a value or a certificate.
template <class T>
class Result {
public:
    static Result accepted(T value) {
        Result r;
        r.value_ = std::move(value);
        return r;
    }
    static Result rejected(NotLneCertificate cert) {
        Result r;
        r.certificate_ = std::move(cert);
        return r;
    }

    bool ok() const { return value_.has_value(); }
    explicit operator bool() const { return ok(); }

    const T& value() const { return value_.value(); }
    T& value() { return value_.value(); }
    const NotLneCertificate& certificate() const { return certificate_.value(); }

private:
    Result() = default;
    std::optional<T> value_;
    std::optional<NotLneCertificate> certificate_;
};

// Violation of an internal invariant (a bug or corrupted state, never a
// property of the input). Maps to its own process exit code in the CLI.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace lne

#endif
