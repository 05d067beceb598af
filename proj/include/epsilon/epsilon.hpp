#pragma once

#include "epsilon/errors.hpp"
#include "epsilon/syntax.hpp"
#include "epsilon/substitution.hpp"
#include "epsilon/proof.hpp"
#include "epsilon/script_io.hpp"
#include "epsilon/tautology.hpp"
#include "epsilon/kernel.hpp"
#include "epsilon/transform.hpp"
#include "epsilon/elimination.hpp"
#include "epsilon/evaluation.hpp"
#include "epsilon/epsub.hpp"
#include "epsilon/pipeline.hpp"
