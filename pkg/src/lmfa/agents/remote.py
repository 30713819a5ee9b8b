"""HTTP transport for remote agents.

Wire protocol (JSON POST, HTTP 200 only):

    request:  {"protocol": "lmfa/1", "system_prompt": str,
               "frames_b64": [str, ...], "state_text": str,
               "reply_format": "single_command_last_line"}
    response: {"reply": str}

An optional adapter reshapes the request into the common chat-completions
form (system message plus one user message with interleaved image parts)
for endpoints that only speak that dialect. The env var LMFA_AUTH_HEADER
("Header-Name: value") is attached verbatim when set.
"""

from __future__ import annotations

import os
from typing import Optional, Tuple

import requests

from lmfa.agents.specs import AgentSpec, FailureKind
from lmfa.observe.describe import Observation

PROTOCOL = "lmfa/1"
REPLY_FORMAT = "single_command_last_line"
AUTH_ENV_VAR = "LMFA_AUTH_HEADER"


def build_wire_request(spec: AgentSpec, obs: Observation, system_prompt: str) -> dict:
    if spec.wire_format == "chat":
        content = [{"type": "text", "text": obs.state_text}]
        for b64 in obs.frames:
            content.append(
                {
                    "type": "image_url",
                    "image_url": {"url": f"data:image/x-portable-pixmap;base64,{b64}"},
                }
            )
        return {
            "model": spec.model_name,
            "messages": [
                {"role": "system", "content": system_prompt},
                {"role": "user", "content": content},
            ],
        }
    return {
        "protocol": PROTOCOL,
        "system_prompt": system_prompt,
        "frames_b64": list(obs.frames),
        "state_text": obs.state_text,
        "reply_format": REPLY_FORMAT,
    }


def extract_reply_text(spec: AgentSpec, body: dict) -> str:
    if spec.wire_format == "chat":
        return body["choices"][0]["message"]["content"]
    return body["reply"]


def request_headers() -> dict:
    headers = {"Content-Type": "application/json"}
    raw = os.environ.get(AUTH_ENV_VAR, "")
    if raw:
        name, _, value = raw.partition(":")
        if name.strip() and value.strip():
            headers[name.strip()] = value.strip()
    return headers


def query_remote(
    spec: AgentSpec, obs: Observation, system_prompt: str
) -> Tuple[Optional[str], Optional[FailureKind]]:
    """POST the observation; returns (reply_text, failure).

    Timeouts and transport errors are retried up to max_retries; malformed
    response bodies are parse failures and are never retried.
    """
    payload = build_wire_request(spec, obs, system_prompt)
    headers = request_headers()
    timeout_s = spec.timeout_ms / 1000
    failure: Optional[FailureKind] = None
    for _ in range(spec.max_retries + 1):
        try:
            response = requests.post(
                spec.endpoint, json=payload, headers=headers, timeout=timeout_s
            )
        except requests.Timeout:
            failure = FailureKind.TIMEOUT
            continue
        except requests.RequestException:
            failure = FailureKind.TRANSPORT
            continue
        if response.status_code != 200:
            failure = FailureKind.TRANSPORT
            continue
        try:
            return extract_reply_text(spec, response.json()), None
        except (ValueError, KeyError, IndexError, TypeError):
            return None, FailureKind.PARSE_ERROR
    return None, failure
