#pragma once

#include <string>
#include <vector>

#include "orgprof/address.hpp"

namespace golden {

struct Case {
  std::string input;
  orgprof::AddressParse expected;
};

// Curated addresses and their hand-decomposed parses.
inline const std::vector<Case>& address_cases() {
  static const std::vector<Case> cases{
      // Double affiliation naming a school, a faculty, a department and two groups.
      {"UNIV GRANADA, ESCUELA TECN SUPER INGN INFORMAT & TELECOMUNICAC, FAC CIENCIAS, "
       "DEPT COMP SCI & ARTIFICIAL INTELLIGENCE, RES GRP SOFT COMP & INTELLIGENT SYST, "
       "GRP INVEST SOFT COMP, E-18071 GRANADA, SPAIN",
       {"UNIV GRANADA",
        {"ESCUELA TECN SUPER INGN INFORMAT & TELECOMUNICAC", "FAC CIENCIAS",
         "DEPT COMP SCI & ARTIFICIAL INTELLIGENCE", "RES GRP SOFT COMP & INTELLIGENT SYST",
         "GRP INVEST SOFT COMP"},
        {"E-18071 GRANADA", "SPAIN"}}},
      {"UNIV GRANADA, FAC SCI, DEPT COMP SCI & ARTIFICIAL INTELLIGENCE, E-18071 GRANADA, SPAIN",
       {"UNIV GRANADA", {"FAC SCI", "DEPT COMP SCI & ARTIFICIAL INTELLIGENCE"},
        {"E-18071 GRANADA", "SPAIN"}}},
      {"UNIV GRANADA, DEPT COMP SCI & AI, E-18071 GRANADA, SPAIN",
       {"UNIV GRANADA", {"DEPT COMP SCI & AI"}, {"E-18071 GRANADA", "SPAIN"}}},
      // University-only, three segments with a postcode in the middle.
      {"UNIV GRANADA, E-18071 GRANADA, SPAIN",
       {"UNIV GRANADA", {}, {"E-18071 GRANADA", "SPAIN"}}},
      {"UNIV GRANADA, 18071 GRANADA, SPAIN", {"UNIV GRANADA", {}, {"18071 GRANADA", "SPAIN"}}},
      {"UNIV LEIDEN, LEIDEN 2300, NETHERLANDS", {"UNIV LEIDEN", {}, {"LEIDEN 2300", "NETHERLANDS"}}},
      {"INST SALUD CARLOS III, MADRID 28029, SPAIN",
       {"INST SALUD CARLOS III", {}, {"MADRID 28029", "SPAIN"}}},
      // Three segments, middle one is a unit.
      {"UNIV GRANADA, DEPT ALGEBRA, SPAIN", {"UNIV GRANADA", {"DEPT ALGEBRA"}, {"SPAIN"}}},
      {"UNIV LEIDEN, CWTS, NETHERLANDS", {"UNIV LEIDEN", {"CWTS"}, {"NETHERLANDS"}}},
      // Three segments whose middle is itself a country name.
      {"UNIV SEVILLA, SPAIN, EUROPE", {"UNIV SEVILLA", {}, {"SPAIN", "EUROPE"}}},
      // Two and one segment.
      {"UNIV GRANADA, SPAIN", {"UNIV GRANADA", {}, {"SPAIN"}}},
      {"UNIV GRANADA, E-18071 GRANADA", {"UNIV GRANADA", {}, {"E-18071 GRANADA"}}},
      {"UNIV GRANADA", {"UNIV GRANADA", {}, {}}},
      // Case, spacing and separators.
      {"  univ   granada ,  dept  physiol , e-18071  granada , spain ",
       {"UNIV GRANADA", {"DEPT PHYSIOL"}, {"E-18071 GRANADA", "SPAIN"}}},
      {"UNIV GRANADA; DEPT PHYSIOL; E-18071 GRANADA; SPAIN",
       {"UNIV GRANADA", {"DEPT PHYSIOL"}, {"E-18071 GRANADA", "SPAIN"}}},
      {"UNIV GRANADA,\tDEPT OPT,\nE-18071 GRANADA, SPAIN",
       {"UNIV GRANADA", {"DEPT OPT"}, {"E-18071 GRANADA", "SPAIN"}}},
      {"UNIV GRANADA, , DEPT OPT, ,E-18071 GRANADA, SPAIN",
       {"UNIV GRANADA", {"DEPT OPT"}, {"E-18071 GRANADA", "SPAIN"}}},
      // Bilingual duplicates stay separate tokens; the alias table merges them.
      {"UNIV GRANADA, DEPT ESTADIST & INVEST OPERAT, DEPT STAT & OPERAT RES, E-18071 GRANADA, SPAIN",
       {"UNIV GRANADA", {"DEPT ESTADIST & INVEST OPERAT", "DEPT STAT & OPERAT RES"},
        {"E-18071 GRANADA", "SPAIN"}}},
      {"UNIV GRANADA, FAC CIENCIAS, FAC SCI, E-18071 GRANADA, SPAIN",
       {"UNIV GRANADA", {"FAC CIENCIAS", "FAC SCI"}, {"E-18071 GRANADA", "SPAIN"}}},
      // Positional tail even without digits.
      {"UNIV GRANADA, DEPT OPT, GRANADA, SPAIN",
       {"UNIV GRANADA", {"DEPT OPT"}, {"GRANADA", "SPAIN"}}},
      {"UNIV CALIF BERKELEY, DEPT STAT, BERKELEY, CA 94720 USA",
       {"UNIV CALIF BERKELEY", {"DEPT STAT"}, {"BERKELEY", "CA 94720 USA"}}},
      {"LONDON SCH ECON, DEPT STAT, LONDON WC2A 2AE, ENGLAND",
       {"LONDON SCH ECON", {"DEPT STAT"}, {"LONDON WC2A 2AE", "ENGLAND"}}},
      {"UNIV POMPEU FABRA, DEPT ECON & BUSINESS, E-08005 BARCELONA, SPAIN",
       {"UNIV POMPEU FABRA", {"DEPT ECON & BUSINESS"}, {"E-08005 BARCELONA", "SPAIN"}}},
      {"UNIV POMPEU FABRA, HOSP DEL MAR, IMIM, E-08003 BARCELONA, SPAIN",
       {"UNIV POMPEU FABRA", {"HOSP DEL MAR", "IMIM"}, {"E-08003 BARCELONA", "SPAIN"}}},
      {"UNIV GRANADA, FAC MED, DEPT PHYSIOL, INST NEUROSCI, E-18012 GRANADA, SPAIN",
       {"UNIV GRANADA", {"FAC MED", "DEPT PHYSIOL", "INST NEUROSCI"},
        {"E-18012 GRANADA", "SPAIN"}}},
      {"UNIV GRANADA, CTR INVEST BIOMED, PARQUE TECNOL CIENCIAS SALUD, E-18100 ARMILLA, SPAIN",
       {"UNIV GRANADA", {"CTR INVEST BIOMED", "PARQUE TECNOL CIENCIAS SALUD"},
        {"E-18100 ARMILLA", "SPAIN"}}},
      {"UGR, DECSAI, E-18071 GRANADA, SPAIN", {"UGR", {"DECSAI"}, {"E-18071 GRANADA", "SPAIN"}}},
      {"CSIC, INST ASTROFIS ANDALUCIA, GRANADA 18008, SPAIN",
       {"CSIC", {"INST ASTROFIS ANDALUCIA"}, {"GRANADA 18008", "SPAIN"}}},
      {"Univ Pompeu Fabra, Parc Recerca Biomed Barcelona, Barcelona 08003, Spain",
       {"UNIV POMPEU FABRA", {"PARC RECERCA BIOMED BARCELONA"}, {"BARCELONA 08003", "SPAIN"}}},
  };
  return cases;
}

}  // namespace golden
