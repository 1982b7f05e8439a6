#pragma once

#include "gkms/report.hpp"
#include "gkms/scan.hpp"

#include <string>
#include <vector>

namespace gkms {

/// Certification sweeps, one per check name. Each returns the worst relative
/// residual of its class over the scenario's sample sets; run_suite wires
/// them together in dependency order (a failed prerequisite marks its
/// dependents skipped, not failed).
CheckRecord check_algebra(const ScenarioBundle& bundle, Exec mode = default_exec());
CheckRecord check_jordan(const ScenarioBundle& bundle, Exec mode = default_exec());
CheckRecord check_flow(const ScenarioBundle& bundle, Exec mode = default_exec());
CheckRecord check_gns(const ScenarioBundle& bundle, Exec mode = default_exec());
CheckRecord check_prop1(const ScenarioBundle& bundle, Exec mode = default_exec());
CheckRecord check_prop2(const ScenarioBundle& bundle, Exec mode = default_exec());
CheckRecord check_prop3(const ScenarioBundle& bundle, Exec mode = default_exec());

CheckRecord check_net(const NetBundle& bundle, std::vector<ModulusDiscrepancy>& table,
                      std::vector<std::string>& notes, Exec mode = default_exec());
CheckRecord check_prop4(const NetBundle& bundle, Exec mode = default_exec());

/// Known check names in dependency order.
const std::vector<std::string>& known_checks();

Report run_suite(const ScenarioBundle& bundle, const std::vector<std::string>& checks,
                 double tolerance, Exec mode = default_exec());
Report run_net_suite(const NetBundle& bundle, const std::vector<std::string>& checks,
                     double tolerance, Exec mode = default_exec());

}  // namespace gkms
