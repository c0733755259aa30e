#pragma once

// Closed-pack cyclone vessel: 18 components under the vessel root, 38
// classified interactions, four single-activity processes, three teams and
// the ActorX viewpoints whose step-4 output is the published two-column
// batch table.

#include <string_view>
#include <tuple>

#include "ppco/workspace.hpp"

namespace ppco::fixture {

inline constexpr std::string_view kDefaultPolicy = R"(# Default batch policy for the cyclone-vessel project.

rule discipline=geometry activity=ShapeGlobalDesign competence>=2
  grant Artifact:1
  grant Function:2
  grant Behavior:2
  grant Flows:2
  grant Geometry-Form:1
  grant Sub-Artifact:2
  grant Assembly:2
  grant Constraints:1
  grant Requirements:2
  grant Group:1

rule discipline=mechanic activity=MechanicalDesign competence>=3
  grant Mechanic:1
  grant Artifact:2
  grant Function:2
  grant Behavior:2
  grant Flows:3
  grant Geometry-Form:2
  grant Sub-Artifact:3
  grant Assembly:3
  grant Constraints:1
  grant Requirements:3
  grant Group:1
)";

inline PpcoModel cyclone_vessel_model() {
  PpcoModel m;
  m.project_id = "cyclone-vessel";
  m.root_artifact_id = ArtifactId("CycloneVessel");

  auto artifact = [&](const char* id, const char* name, const char* parent, ArtifactKind kind, const char* desc) {
    Artifact a;
    a.id = ArtifactId(id);
    a.name = name;
    a.description = desc;
    if (parent != nullptr) a.parent_id = ArtifactId(parent);
    a.kind = kind;
    m.artifacts.push_back(std::move(a));
  };
  using enum ArtifactKind;
  artifact("CycloneVessel", "Closed pack cyclone vessel", nullptr, FinalProduct, "gas/solid separator vessel");
  artifact("ShellAssembly", "Shell assembly", "CycloneVessel", SubArtifact, "pressure-bearing body");
  artifact("CylindricalShell", "Cylindrical shell", "ShellAssembly", Component, "rolled barrel");
  artifact("ConicalBottom", "Conical bottom", "ShellAssembly", Component, "separation cone");
  artifact("TopHead", "Top head", "ShellAssembly", Component, "torispherical head");
  artifact("SupportSkirt", "Support skirt", "ShellAssembly", Component, "load-bearing skirt");
  artifact("BaseRing", "Base ring", "ShellAssembly", Component, "anchor ring");
  artifact("InletOutletAssembly", "Inlet/outlet assembly", "CycloneVessel", SubArtifact, "gas path");
  artifact("InletNozzle", "Tangential inlet nozzle", "InletOutletAssembly", Component, "dirty gas inlet");
  artifact("InletFlange", "Inlet flange", "InletOutletAssembly", Component, "inlet connection");
  artifact("DeflectorPlate", "Deflector plate", "InletOutletAssembly", Component, "wear plate at inlet");
  artifact("VortexFinder", "Vortex finder", "InletOutletAssembly", Component, "clean gas tube");
  artifact("GasOutletNozzle", "Gas outlet nozzle", "InletOutletAssembly", Component, "clean gas outlet");
  artifact("DischargeAssembly", "Discharge assembly", "CycloneVessel", SubArtifact, "solids path");
  artifact("DustHopper", "Dust hopper", "DischargeAssembly", Component, "solids collection");
  artifact("RotaryValve", "Rotary valve", "DischargeAssembly", Component, "airlock discharge");
  artifact("DischargeFlange", "Discharge flange", "DischargeAssembly", Component, "solids outlet connection");
  artifact("InspectionHatch", "Inspection hatch", "DischargeAssembly", Component, "maintenance access");
  artifact("GasketSet", "Gasket set", "DischargeAssembly", Component, "flange sealing");
  m.artifacts.front().batches.emplace(BatchKind("Geometry-Form"), "cad://cyclone-vessel/assembly.step");

  using enum InteractionClass;
  const std::tuple<const char*, const char*, InteractionClass, const char*> links[] = {
      {"CylindricalShell", "ConicalBottom", Space, "circumferential seam"},
      {"CylindricalShell", "ConicalBottom", Material, "weld joint"},
      {"CylindricalShell", "TopHead", Space, "head seam"},
      {"CylindricalShell", "TopHead", Material, "weld joint"},
      {"CylindricalShell", "SupportSkirt", Space, "skirt attachment"},
      {"SupportSkirt", "BaseRing", Space, "skirt to ring"},
      {"SupportSkirt", "BaseRing", Energy, "dead load transfer"},
      {"ConicalBottom", "SupportSkirt", Energy, "cone load path"},
      {"InletNozzle", "InletFlange", Space, "nozzle neck"},
      {"InletNozzle", "CylindricalShell", Space, "tangential opening"},
      {"InletNozzle", "CylindricalShell", Material, "dirty gas entry"},
      {"InletNozzle", "DeflectorPlate", Material, "particle impact"},
      {"DeflectorPlate", "CylindricalShell", Space, "plate lining"},
      {"DeflectorPlate", "CylindricalShell", Energy, "erosion load"},
      {"VortexFinder", "TopHead", Space, "finder penetration"},
      {"VortexFinder", "GasOutletNozzle", Space, "outlet transition"},
      {"VortexFinder", "GasOutletNozzle", Material, "clean gas"},
      {"GasOutletNozzle", "TopHead", Space, "outlet opening"},
      {"CylindricalShell", "VortexFinder", Material, "inner vortex"},
      {"InletFlange", "GasketSet", Space, "inlet sealing face"},
      {"ConicalBottom", "DustHopper", Space, "cone to hopper"},
      {"ConicalBottom", "DustHopper", Material, "solids underflow"},
      {"DustHopper", "RotaryValve", Space, "valve mounting"},
      {"DustHopper", "RotaryValve", Material, "solids feed"},
      {"RotaryValve", "DischargeFlange", Space, "valve outlet"},
      {"DischargeFlange", "GasketSet", Space, "discharge sealing face"},
      {"RotaryValve", "DischargeFlange", Material, "solids discharge"},
      {"InspectionHatch", "DustHopper", Space, "hatch opening"},
      {"InspectionHatch", "GasketSet", Space, "hatch sealing"},
      {"RotaryValve", "BaseRing", Energy, "drive vibration"},
      {"InletNozzle", "VortexFinder", Information, "inlet/finder sizing ratio"},
      {"CylindricalShell", "ConicalBottom", Information, "shared diameter"},
      {"DustHopper", "InspectionHatch", Information, "level sensor position"},
      {"RotaryValve", "InspectionHatch", Information, "maintenance access"},
      {"TopHead", "GasOutletNozzle", Energy, "thermal expansion"},
      {"CylindricalShell", "InletFlange", Information, "nozzle load limits"},
      {"SupportSkirt", "DischargeFlange", Space, "clearance envelope"},
      {"ShellAssembly", "InletOutletAssembly", Information, "interface specification"},
  };
  int n = 0;
  for (const auto& [a, b, cls, desc] : links) {
    ++n;
    std::string id = (n < 10 ? "I0" : "I") + std::to_string(n);
    m.interactions.push_back({InteractionId(id), ArtifactId(a), ArtifactId(b), cls, desc});
  }

  auto process = [&](const char* pid, const char* pname, const char* aid, const char* aname, const char* discipline) {
    m.processes.push_back({ProcessId(pid), pname, {ActivityId(aid)}});
    m.activities.push_back({ActivityId(aid), ProcessId(pid), aname, discipline});
  };
  process("P1", "Requirements analysis", "RequirementsAnalysis", "Analyse customer requirements", "requirements");
  process("P2", "Shape global design", "ShapeGlobalDesign", "Design global shape", "geometry");
  process("P3", "Mechanical design", "MechanicalDesign", "Design mechanical resistance", "mechanic");
  process("P4", "Layout feasibility", "LayoutFeasibility", "Determine feasible layout", "manufacturing");

  auto task = [&](const char* id, const char* activity, const char* name) {
    m.tasks.push_back({TaskId(id), ActivityId(activity), name});
  };
  task("TK01", "RequirementsAnalysis", "Collect customer requirements");
  task("TK02", "RequirementsAnalysis", "Specify operating conditions");
  task("TK03", "ShapeGlobalDesign", "Sketch global layout");
  task("TK04", "ShapeGlobalDesign", "Build CAD solid model");
  task("TK05", "MechanicalDesign", "Size shell thickness");
  task("TK06", "MechanicalDesign", "Check nozzle loads");
  task("TK07", "LayoutFeasibility", "Check feasible layout");
  task("TK08", "LayoutFeasibility", "Release design");

  auto flow = [&](const char* from, const char* to, const char* payload) {
    m.task_flows.push_back({TaskId(from), TaskId(to), payload});
  };
  flow("TK01", "TK02", "requirement list");
  flow("TK02", "TK03", "operating envelope");
  flow("TK03", "TK04", "layout sketch");
  flow("TK04", "TK05", "CAD solid model");
  flow("TK05", "TK06", "wall thicknesses");
  flow("TK06", "TK04", "geometry corrections");
  flow("TK04", "TK07", "CAD solid model");
  flow("TK06", "TK07", "load report");
  flow("TK07", "TK08", "feasible layout");
  flow("TK07", "TK03", "layout rework");

  m.organization.teams = {
      {TeamId("T1"), "Shell design team", {ActorId("ActorX")}, ArtifactId("ShellAssembly")},
      {TeamId("T2"), "Gas path team", {ActorId("ActorY")}, ArtifactId("InletOutletAssembly")},
      {TeamId("T3"), "Discharge team", {ActorId("ActorW"), ActorId("ActorZ")}, ArtifactId("DischargeAssembly")},
  };
  const std::tuple<const char*, const char*, std::int64_t> freq[] = {{"T1", "T2", 8}, {"T1", "T3", 3}, {"T2", "T3", 5}};
  auto& matrix = m.organization.collaboration_matrix;
  for (const char* t : {"T1", "T2", "T3"}) matrix[TeamId(t)][TeamId(t)] = 0;
  for (const auto& [a, b, f] : freq) {
    matrix[TeamId(a)][TeamId(b)] = f;
    matrix[TeamId(b)][TeamId(a)] = f;
  }

  canonicalize(m);
  return m;
}

inline std::vector<Actor> cyclone_vessel_actors() {
  auto actor = [](const char* id, const char* name, const char* role, Situation s, const char* team,
                  std::map<Discipline, CompetenceLevel> comp) {
    return Actor{ActorId(id), name, role, s, TeamId(team), std::move(comp)};
  };
  using enum Situation;
  return {
      actor("ActorW", "Actor W", "project manager", Internal, "T3", {{"requirements", CompetenceLevel(2)}}),
      actor("ActorX", "Actor X", "external designer", ExternalPartner, "T1",
            {{"geometry", CompetenceLevel(2)}, {"mechanic", CompetenceLevel(3)}}),
      actor("ActorY", "Actor Y", "geometry designer", Internal, "T2",
            {{"geometry", CompetenceLevel(4)}, {"mechanic", CompetenceLevel(2)}}),
      actor("ActorZ", "Actor Z", "manufacturing engineer", Internal, "T3", {{"manufacturing", CompetenceLevel(3)}}),
  };
}

inline std::vector<Viewpoint> cyclone_vessel_viewpoints() {
  auto vp = [](const char* id, const char* actor, const char* activity, const char* discipline, const char* focus,
               const char* target, int importance, std::vector<ViewpointRelationship> rels = {}) {
    return Viewpoint{ViewpointId(id), ActorId(actor), {ActivityId(activity), discipline},
                     {focus, ArtifactId(target)}, std::move(rels), Importance(importance)};
  };
  return {
      vp("VP1", "ActorX", "ShapeGlobalDesign", "geometry", "shape global design", "CycloneVessel", 4),
      vp("VP2", "ActorX", "MechanicalDesign", "mechanic", "mechanical design", "CycloneVessel", 3,
         {{ViewpointId("VP1"), RelationshipKind::Complements}}),
      vp("VP3", "ActorY", "ShapeGlobalDesign", "geometry", "vessel geometry review", "CycloneVessel", 3),
      vp("VP4", "ActorY", "MechanicalDesign", "mechanic", "nozzle load check", "InletOutletAssembly", 2,
         {{ViewpointId("VP3"), RelationshipKind::Refines}}),
      vp("VP5", "ActorZ", "LayoutFeasibility", "manufacturing", "layout feasibility", "CycloneVessel", 2),
  };
}

/// Model, registries and default policy, registered through the checked path.
inline Workspace cyclone_vessel_workspace() {
  Workspace ws;
  ws.model = cyclone_vessel_model();
  for (auto& a : cyclone_vessel_actors()) ws.register_actor(std::move(a));
  for (auto& v : cyclone_vessel_viewpoints()) ws.register_viewpoint(std::move(v));
  ws.policy = parse_policy(kDefaultPolicy);
  return ws;
}

}  // namespace ppco::fixture
