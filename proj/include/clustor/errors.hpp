#pragma once

#include <stdexcept>
#include <string>

namespace clustor {

// Base of all numerical-failure exceptions thrown by the library.
// `module_name` and `kind` identify the failing subsystem and the error
// variant so the CLI can report "module: Kind: detail" and exit code 2.
class Error : public std::runtime_error {
public:
    Error(std::string module_name, std::string kind, const std::string& detail)
        : std::runtime_error(module_name + ": " + kind + ": " + detail),
          module(std::move(module_name)), kind(std::move(kind)) {}

    std::string module;
    std::string kind;
};

#define CLUSTOR_DEFINE_ERROR(NAME)                                            \
    class NAME : public Error {                                               \
    public:                                                                   \
        NAME(const std::string& module_name, const std::string& detail)       \
            : Error(module_name, #NAME, detail) {}                            \
    }

CLUSTOR_DEFINE_ERROR(NonConvergentUnwrap);
CLUSTOR_DEFINE_ERROR(SeriesOverflow);
CLUSTOR_DEFINE_ERROR(DegenerateDenominator);
CLUSTOR_DEFINE_ERROR(NonzeroPotentialAtReference);
CLUSTOR_DEFINE_ERROR(GridTooCoarse);
CLUSTOR_DEFINE_ERROR(BranchCrossing);
CLUSTOR_DEFINE_ERROR(QuadratureFailure);
CLUSTOR_DEFINE_ERROR(OutsideTurningPoints);
CLUSTOR_DEFINE_ERROR(NoConvergence);
CLUSTOR_DEFINE_ERROR(NormalizationFailure);
CLUSTOR_DEFINE_ERROR(WindowNotClosed);
CLUSTOR_DEFINE_ERROR(ParityViolation);
CLUSTOR_DEFINE_ERROR(UnknownFigure);
CLUSTOR_DEFINE_ERROR(InvalidConfig);

#undef CLUSTOR_DEFINE_ERROR

}  // namespace clustor
