#pragma once

#include "pancyclic/graph.hpp"
#include "pancyclic/graph_io.hpp"
#include "pancyclic/constructions.hpp"
#include "pancyclic/cycle_search.hpp"
#include "pancyclic/gadget.hpp"
#include "pancyclic/witness.hpp"
#include "pancyclic/canon.hpp"
#include "pancyclic/extremal.hpp"
#include "pancyclic/bounds.hpp"
#include "pancyclic/report.hpp"
