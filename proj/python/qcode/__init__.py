# Copyright 2026 The qcode Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the qcode recovery library."""

import json

from ._qcode import (
    Code,
    Error,
    InvalidArgument,
    NonOrthonormalBasis,
    NotCorrigible,
    NotLegal,
    SpecParseError,
    builtin_codes,
    corrupt_coherent,
    corrupt_environment,
    encode,
    random_state,
    recover,
)
from ._qcode import run as _run


def run(command, **kwargs):
    """Run a suite and return the parsed JSON report."""
    return json.loads(_run(command, **kwargs))


__all__ = [
    "Code", "Error", "InvalidArgument", "NonOrthonormalBasis", "NotCorrigible", "NotLegal",
    "SpecParseError", "builtin_codes", "corrupt_coherent", "corrupt_environment", "encode",
    "random_state", "recover", "run",
]
