/*
   Copyright 2026 The cosetbound authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef COSETBOUND_COSETBOUND_HPP
#define COSETBOUND_COSETBOUND_HPP

#include "bipoly.hpp"
#include "bounds.hpp"
#include "counting.hpp"
#include "errors.hpp"
#include "ffield.hpp"
#include "harness.hpp"
#include "modlinalg.hpp"
#include "rng.hpp"
#include "stepanov.hpp"
#include "unipoly.hpp"

#endif  // COSETBOUND_COSETBOUND_HPP
