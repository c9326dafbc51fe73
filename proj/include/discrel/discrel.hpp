#pragma once

#include "discrel/automata.hpp"
#include "discrel/bit_table.hpp"
#include "discrel/domain.hpp"
#include "discrel/errors.hpp"
#include "discrel/polynomial.hpp"
#include "discrel/relation.hpp"
#include "discrel/relation_io.hpp"
#include "discrel/simplicial_complex.hpp"
#include "discrel/structure.hpp"
