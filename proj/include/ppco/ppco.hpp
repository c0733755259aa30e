#pragma once

#include "ppco/codec.hpp"
#include "ppco/documents.hpp"
#include "ppco/filter.hpp"
#include "ppco/fixture.hpp"
#include "ppco/model.hpp"
#include "ppco/policy.hpp"
#include "ppco/service.hpp"
#include "ppco/store.hpp"
#include "ppco/validate.hpp"
#include "ppco/viewpoint.hpp"
#include "ppco/workflow.hpp"
#include "ppco/workspace.hpp"
