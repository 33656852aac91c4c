#!/usr/bin/env python3
# Copyright 2026 The cfx Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Line-protocol play-tennis classifier used by the external backend tests.

Usage: tennis_classifier.py [ok | yes | die-after N | hang | bad-handshake |
                             log FILE]
"""

import sys
import time


def classify(outlook, humidity, wind):
    if outlook == "sunny" and humidity == "normal":
        return 1
    if outlook == "overcast":
        return 1
    if outlook == "rain" and wind == "weak":
        return 1
    return 0


def main(argv):
    mode = argv[1] if len(argv) > 1 else "ok"
    limit = int(argv[2]) if mode == "die-after" else None
    log = open(argv[2], "a") if mode == "log" else None
    hello = sys.stdin.readline()
    if not hello.startswith("#schema "):
        return 2
    if mode == "bad-handshake":
        print("#nope", flush=True)
        return 0
    print("#ok", flush=True)
    answered = 0
    for line in sys.stdin:
        line = line.rstrip("\n")
        if limit is not None and answered >= limit:
            return 1
        if mode == "hang":
            time.sleep(3600)
        if log is not None:
            log.write(line + "\n")
            log.flush()
        if mode == "yes":
            print("yes", flush=True)
        else:
            print(classify(*line.split(",")), flush=True)
        answered += 1
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
