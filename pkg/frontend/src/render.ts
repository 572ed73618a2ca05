/** Minimal DOM renderer; all state lives in the controller. */
import { ReviewController } from "./controller.js";
import { CLASSES, QueueEntry } from "./types.js";

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function probBar(entry: QueueEntry): HTMLElement {
  const wrap = el("div", "probs");
  entry.probs.forEach((p, code) => {
    const seg = el("span", "prob-seg", `${CLASSES[code]?.label ?? code} ${(p * 100).toFixed(1)}%`);
    seg.style.opacity = String(0.35 + 0.65 * p);
    wrap.appendChild(seg);
  });
  return wrap;
}

function renderRow(controller: ReviewController, entry: QueueEntry): HTMLElement {
  const row = el("div", "queue-row" + (entry.id === controller.state.currentId ? " selected" : ""));
  row.appendChild(el("span", "item-id", entry.id));
  row.appendChild(el("span", "max-prob", `max p = ${entry.max_prob.toFixed(3)}`));
  row.appendChild(
    el("span", "round", entry.needs_adjudication ? "needs adjudication" : `round ${entry.pending_round ?? "-"}`),
  );
  row.addEventListener("click", () => controller.select(entry.id));
  return row;
}

function renderLabelPanel(controller: ReviewController, root: HTMLElement): void {
  const item = controller.current();
  if (!item) {
    root.appendChild(el("p", "empty", "Nothing pending for this session."));
    return;
  }
  const panel = el("div", "label-panel");
  const img = document.createElement("img");
  img.src = item.rendition_url;
  img.alt = item.id;
  img.className = "rendition";
  panel.appendChild(img);
  panel.appendChild(probBar(item));

  const buttons = el("div", "class-buttons");
  for (const cls of CLASSES) {
    const button = el("button", "class-button", `${cls.key} ${cls.label}`);
    button.addEventListener("click", () => void controller.submit(cls.code));
    buttons.appendChild(button);
  }
  panel.appendChild(buttons);

  if (controller.session.round === "adjudication" && item.round1 && item.round2) {
    panel.appendChild(
      el(
        "p",
        "disagreement",
        `round 1 (${item.round1.reader}): ${CLASSES[item.round1.label]?.label} / ` +
          `round 2 (${item.round2.reader}): ${CLASSES[item.round2.label]?.label}`,
      ),
    );
  }
  root.appendChild(panel);
}

export function render(controller: ReviewController, root: HTMLElement): void {
  root.textContent = "";

  const header = el("header", "topbar");
  header.appendChild(el("h1", "title", "Review queue"));
  header.appendChild(
    el("span", "session", `${controller.session.reader} / round ${controller.session.round}`),
  );
  const retry = el("button", "refresh", "Refresh");
  retry.addEventListener("click", () => void controller.refresh());
  header.appendChild(retry);
  root.appendChild(header);

  if (controller.state.banner) {
    root.appendChild(el("div", "banner error", controller.state.banner));
  }
  if (controller.state.notice) {
    root.appendChild(el("div", "banner notice", controller.state.notice));
  }

  const queue = el("section", "queue");
  if (controller.state.entries.length === 0) {
    queue.appendChild(el("p", "empty", "Queue is empty. All items have consensus labels."));
  } else {
    for (const entry of controller.state.entries) {
      queue.appendChild(renderRow(controller, entry));
    }
  }
  root.appendChild(queue);

  const work = el("section", "work");
  renderLabelPanel(controller, work);
  root.appendChild(work);
}
