#pragma once

#include <string>

#include "gdga/element.hpp"
#include "gdga/gapped.hpp"
#include "gdga/report.hpp"

namespace gdga {

// Errors carry the JSON path of the offending value.
Q rational_from_json(const json& j, const std::string& path = "");
json rational_to_json(const Q& q);

json class_to_json(const ClassVector& a);
ClassVector class_from_json(const json& j, const ClassGroup& g, const std::string& path = "");

json svec_to_json(const SVec& v);
SVec svec_from_json(const json& j, const std::string& path = "");

json group_to_json(const ClassGroup& g);
ClassGroup group_from_json(const json& j, const std::string& path = "group");

json element_to_json(const ClassGroup& g, const Element& x);
Element element_from_json(const json& j, const ClassGroup& g, const std::string& path = "");

CurveMonoid monoid_from_json(const json& j, const ClassGroup& g, const std::string& path = "monoid");
json monoid_to_json(const CurveMonoid& m);
PerturbedClassModule module_from_json(const json& j, const ClassGroup& g, const CurveMonoid& base,
                                      const std::string& path = "module");
json module_to_json(const PerturbedClassModule& n);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);
// Canonical serialization used for every report and certificate.
std::string canonical_dump(const json& j);

}  // namespace gdga
