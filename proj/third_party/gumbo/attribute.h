// Copyright 2010 Google Inc. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Author: jdtang@google.com (Jonathan Tang)

#ifndef GUMBO_ATTRIBUTE_H_
#define GUMBO_ATTRIBUTE_H_

#include "gumbo.h"

#ifdef __cplusplus
extern "C" {
#endif

struct GumboInternalParser;

void gumbo_attribute_set_value(GumboAttribute *attr, const char *value);
void gumbo_destroy_attribute(GumboAttribute* attribute);

void gumbo_element_set_attribute(
    GumboElement *element, const char *name, const char *value);
void gumbo_element_remove_attribute_at(GumboElement *element, unsigned int pos);
void gumbo_element_remove_attribute(GumboElement *element, GumboAttribute *attr);

#ifdef __cplusplus
}
#endif

#endif  // GUMBO_ATTRIBUTE_H_
