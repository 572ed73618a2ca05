/** Entry point: wire the controller to the DOM and the keyboard. */
import { HttpApiClient } from "./api.js";
import { ReviewController } from "./controller.js";
import { render } from "./render.js";
import { ReaderSession, SessionRound } from "./types.js";

function sessionFromQuery(): ReaderSession {
  const params = new URLSearchParams(window.location.search);
  const reader = params.get("reader") ?? "anonymous";
  const roundParam = params.get("round") ?? "1";
  const round: SessionRound =
    roundParam === "adjudication" ? "adjudication" : roundParam === "2" ? 2 : 1;
  return { reader, round };
}

const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");

const controller = new ReviewController(new HttpApiClient(), sessionFromQuery());
controller.onChange(() => render(controller, root));

document.addEventListener("keydown", (event) => {
  if (event.target instanceof HTMLInputElement) return;
  void controller.keyPressed(event.key);
});

void controller.refresh();
setInterval(() => void controller.refresh(), 15_000);
