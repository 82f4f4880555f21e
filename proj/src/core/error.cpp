#include "assemblyline/error.hpp"

namespace assemblyline {

void throw_error(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace assemblyline
