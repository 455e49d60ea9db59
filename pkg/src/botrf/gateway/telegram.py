"""Optional Telegram adapter: long-polls the bot API and routes text
messages through the command engine, using the chat id as owner.

Shared locations start a site-creation prompt so phone GPS fixes can be
named and stored without typing coordinates. Chart responses are sent
as SVG documents. The adapter is entirely optional: without a token the
HTTP API and REPL serve as usual, and nothing here is imported at
startup unless enabled.
"""

from __future__ import annotations

import io
import logging
import threading
import time

import requests

from ..sitestore import SITE_NAME_RE
from .engine import Engine, ResponseKind

logger = logging.getLogger(__name__)

_MAX_BACKOFF_S = 60.0


class TelegramAdapter:
    def __init__(
        self,
        engine: Engine,
        token: str,
        api_base: str = "https://api.telegram.org",
        poll_timeout_s: int = 30,
    ):
        if not token:
            raise ValueError("telegram token must be non-empty")
        self.engine = engine
        self.base = f"{api_base}/bot{token}"
        self.poll_timeout_s = poll_timeout_s
        self.offset = 0
        # chat id -> (lat, lon) waiting for a name
        self.pending_locations: dict[str, tuple[float, float]] = {}

    def check_token(self) -> None:
        """Fail fast on an unauthorized token."""
        resp = requests.get(f"{self.base}/getMe", timeout=15)
        if resp.status_code == 401:
            raise RuntimeError(
                "telegram token rejected (401 unauthorized); check TELEGRAM_TOKEN"
            )
        resp.raise_for_status()

    def run_forever(self, stop: threading.Event | None = None) -> None:
        """Poll updates until the stop event is set; network failures back
        off exponentially and never crash the adapter."""
        self.check_token()
        backoff = 1.0
        while stop is None or not stop.is_set():
            try:
                updates = self._get_updates()
                backoff = 1.0
            except requests.RequestException as exc:
                logger.warning("telegram poll failed (%s); retrying in %.0fs", exc, backoff)
                time.sleep(backoff)
                backoff = min(backoff * 2.0, _MAX_BACKOFF_S)
                continue
            for update in updates:
                self.offset = max(self.offset, update["update_id"] + 1)
                try:
                    self._handle_update(update)
                except Exception:
                    logger.exception("failed to handle update %s", update.get("update_id"))

    def _get_updates(self) -> list:
        resp = requests.get(
            f"{self.base}/getUpdates",
            params={"offset": self.offset, "timeout": self.poll_timeout_s},
            timeout=self.poll_timeout_s + 15,
        )
        resp.raise_for_status()
        payload = resp.json()
        return payload.get("result", [])

    def _handle_update(self, update: dict) -> None:
        message = update.get("message")
        if not message:
            return
        chat_id = str(message["chat"]["id"])

        location = message.get("location")
        if location:
            lat, lon = location["latitude"], location["longitude"]
            self.pending_locations[chat_id] = (lat, lon)
            self._send_text(
                chat_id,
                f"name this site: reply with a short name to store "
                f"({lat:.4f}, {lon:.4f})",
            )
            return

        text = message.get("text")
        if not text:
            return
        text = text.strip()

        pending = self.pending_locations.get(chat_id)
        if pending and SITE_NAME_RE.match(text):
            lat, lon = self.pending_locations.pop(chat_id)
            text = f"site {text} {lat} {lon}"

        response = self.engine.execute(chat_id, text)
        if response.kind is ResponseKind.CHART and response.chart_svg:
            self._send_document(chat_id, response.chart_svg, caption=response.body)
        else:
            self._send_text(chat_id, response.body)

    def _send_text(self, chat_id: str, text: str) -> None:
        requests.post(
            f"{self.base}/sendMessage",
            json={"chat_id": chat_id, "text": text[:4000]},
            timeout=15,
        )

    def _send_document(self, chat_id: str, svg: str, caption: str) -> None:
        requests.post(
            f"{self.base}/sendDocument",
            data={"chat_id": chat_id, "caption": caption[:1000]},
            files={"document": ("chart.svg", io.BytesIO(svg.encode()), "image/svg+xml")},
            timeout=30,
        )
