#pragma once

#include "f2r/autsearch.hpp"
#include "f2r/classify.hpp"
#include "f2r/error.hpp"
#include "f2r/forms.hpp"
#include "f2r/fraisse.hpp"
#include "f2r/gf2.hpp"
#include "f2r/groups.hpp"
#include "f2r/io.hpp"
#include "f2r/orbits.hpp"
#include "f2r/parallel.hpp"
#include "f2r/perm.hpp"
#include "f2r/relations.hpp"
