#pragma once

// One Turtle document that uses every construct the parser accepts.

namespace virtrep::test_support {

inline constexpr const char* kTurtleCorpusBase = "http://localhost:8080/corpus/doc";

inline constexpr const char* kTurtleCorpus = R"TTL(# comment line
@prefix ex: <http://example.org/> .
PREFIX saref: <https://w3id.org/saref#>
prefix xsd: <http://www.w3.org/2001/XMLSchema#>
@prefix : <http://example.org/default#> .
@base <http://localhost:8080/corpus/> .
BASE <http://localhost:8080/corpus/inner/>

<a> a ex:Thing ;                       # relative IRI, 'a'
    ex:plain "x", 'single' ;           # object list
    ex:long """multi
line "quoted" text""", '''single
long''' ;
    ex:escapes "tab\t nl\n cr\r bs\\ q\" sq\' b\b f\f é \U0001F600" ;
    ex:lang "hi"@en, "grüße"@de-AT ;
    ex:typed "5"^^xsd:integer, "2024-01-01"^^<http://www.w3.org/2001/XMLSchema#date> ;
    ex:numbers 15, -2.50, +3, .5, 1.5e1, 2E-3 ;
    ex:bools true, false ;
    ex:nested [ ex:r ex:s ; ex:deeper [ ex:t 1 ] ] ;
    ex:list ( 1 "two" ex:three ( ) [ ex:in "list" ] ) ;
    ex:empty ( ) ;
    saref:hasState "up" ;
    :local ex:with\.dot, ex:x-y_z.9 ;
    <http://example.org/Abc> <../up> ;
    .
_:x ex:p _:y .
_:y ex:p _:x .
[] ex:anonymous "subject" .
[ ex:only "properties" ] .
( 1 2 ) ex:listSubject true .
ex:trailing ex:p ex:o ; .
)TTL";

}  // namespace virtrep::test_support
