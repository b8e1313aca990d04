#pragma once

#include "reflexlab/catalog.hpp"
#include "reflexlab/characters.hpp"
#include "reflexlab/cm_checks.hpp"
#include "reflexlab/cm_structure.hpp"
#include "reflexlab/errors.hpp"
#include "reflexlab/function_algebra.hpp"
#include "reflexlab/group_algebra.hpp"
#include "reflexlab/linear_algebra.hpp"
#include "reflexlab/rational.hpp"
#include "reflexlab/report.hpp"
#include "reflexlab/runner.hpp"
#include "reflexlab/signed_perm.hpp"
#include "reflexlab/split_model.hpp"
