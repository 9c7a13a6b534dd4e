#pragma once

#include <string_view>

// Fixed IRIs used across the project.

namespace virtrep::rdf {

namespace xsd {
inline constexpr std::string_view kNamespace = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kBoolean = "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr std::string_view kInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kDouble = "http://www.w3.org/2001/XMLSchema#double";
}  // namespace xsd

namespace rdfns {
inline constexpr std::string_view kNamespace = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kFirst = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
inline constexpr std::string_view kRest = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
inline constexpr std::string_view kNil = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
inline constexpr std::string_view kLangString = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
}  // namespace rdfns

namespace ldp {
inline constexpr std::string_view kNamespace = "http://www.w3.org/ns/ldp#";
inline constexpr std::string_view kContains = "http://www.w3.org/ns/ldp#contains";
inline constexpr std::string_view kResource = "http://www.w3.org/ns/ldp#Resource";
inline constexpr std::string_view kRdfSource = "http://www.w3.org/ns/ldp#RDFSource";
inline constexpr std::string_view kNonRdfSource = "http://www.w3.org/ns/ldp#NonRDFSource";
inline constexpr std::string_view kContainer = "http://www.w3.org/ns/ldp#Container";
inline constexpr std::string_view kBasicContainer = "http://www.w3.org/ns/ldp#BasicContainer";
}  // namespace ldp

namespace vr {
inline constexpr std::string_view kNamespace = "http://purl.org/virtrep#";
inline constexpr std::string_view kHasProgram = "http://purl.org/virtrep#hasProgram";
inline constexpr std::string_view kHasQuery = "http://purl.org/virtrep#hasQuery";
inline constexpr std::string_view kSimulates = "http://purl.org/virtrep#simulates";
inline constexpr std::string_view kErrorKind = "http://purl.org/virtrep#errorKind";
inline constexpr std::string_view kErrorDetail = "http://purl.org/virtrep#errorDetail";
inline constexpr std::string_view kOnFailure = "http://purl.org/virtrep#onFailure";
inline constexpr std::string_view kVirtualRepresentation = "http://purl.org/virtrep#VirtualRepresentation";
inline constexpr std::string_view kVrContainerClass = "http://purl.org/virtrep#VirtualRepresentationContainer";
/// Interaction-model markers sent in `Link: <...>; rel="type"` on POST.
inline constexpr std::string_view kVrContainerMarker = "tag:virtrep:VrContainer";
inline constexpr std::string_view kVirtualResourceMarker = "tag:virtrep:VirtualResource";
}  // namespace vr

namespace saref {
inline constexpr std::string_view kNamespace = "https://w3id.org/saref#";
inline constexpr std::string_view kHasState = "https://w3id.org/saref#hasState";
}  // namespace saref

namespace demo {
inline constexpr std::string_view kNamespace = "http://purl.org/virtrep/demo#";
inline constexpr std::string_view kActionCount = "http://purl.org/virtrep/demo#actionCount";
inline constexpr std::string_view kAbrasion = "http://purl.org/virtrep/demo#abrasion";
inline constexpr std::string_view kArm = "http://purl.org/virtrep/demo#Arm";
inline constexpr std::string_view kClaw = "http://purl.org/virtrep/demo#Claw";
}  // namespace demo

namespace http_vocab {
inline constexpr std::string_view kNamespace = "http://www.w3.org/2011/http#";
inline constexpr std::string_view kMethod = "http://www.w3.org/2011/http#mthd";
inline constexpr std::string_view kRequestUri = "http://www.w3.org/2011/http#requestURI";
inline constexpr std::string_view kMethodsNamespace = "http://www.w3.org/2011/http-methods#";
inline constexpr std::string_view kGet = "http://www.w3.org/2011/http-methods#GET";
}  // namespace http_vocab

namespace math {
inline constexpr std::string_view kNamespace = "http://www.w3.org/2000/10/swap/math#";
}

namespace log {
inline constexpr std::string_view kImplies = "http://www.w3.org/2000/10/swap/log#implies";
}

}  // namespace virtrep::rdf
