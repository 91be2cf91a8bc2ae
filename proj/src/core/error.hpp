#ifndef ZK_CORE_ERROR_HPP
#define ZK_CORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace zk {

enum class ErrorCode : int {
    input = 1,     // malformed input, bad labels, precondition violations
    resource = 2,  // computation exceeds configured limits
    internal = 3,  // consistency failure; indicates a bug
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void throw_input(const std::string& msg) {
    throw Error(ErrorCode::input, msg);
}
[[noreturn]] inline void throw_resource(const std::string& msg) {
    throw Error(ErrorCode::resource, msg);
}
[[noreturn]] inline void throw_internal(const std::string& msg) {
    throw Error(ErrorCode::internal, msg);
}

}  // namespace zk

#endif
