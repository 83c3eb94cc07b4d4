// The three-screen browser client: setup -> chat -> wrap-up.
// All data (attraction names, questionnaire items) comes from the service.

import type { DialogueApi } from "./api";
import {
  ChatState,
  ITEM_COUNT,
  NO_QUESTION_PHRASE,
  applyTurn,
  clampDesire,
  formatEffect,
  formatMetrics,
  gazeLabel,
  isDone,
  newChatState,
  nodActive,
  questionnaireError,
  setupValid,
} from "./state";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Array<Node | string>
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

export async function mountApp(root: HTMLElement, api: DialogueApi): Promise<void> {
  root.replaceChildren();
  const [catalog, questionnaire] = await Promise.all([api.catalog(), api.questionnaire()]);

  let chat: ChatState | null = null;
  let preDesire = 50;

  const screens = {
    setup: el("section", { id: "setup-screen" }),
    chat: el("section", { id: "chat-screen", hidden: "" }),
    wrapup: el("section", { id: "wrapup-screen", hidden: "" }),
  };
  root.append(screens.setup, screens.chat, screens.wrapup);

  function show(name: keyof typeof screens): void {
    for (const [key, screen] of Object.entries(screens)) {
      screen.hidden = key !== name;
    }
  }

  // ---- setup screen -------------------------------------------------
  const pickA = el("select", { id: "choice-a" });
  const pickB = el("select", { id: "choice-b" });
  for (const select of [pickA, pickB]) {
    select.append(el("option", { value: "" }, "choose..."));
    for (const entry of catalog.attractions) {
      select.append(el("option", { value: entry.id }, entry.name));
    }
  }
  const preSlider = el("input", {
    id: "pre-desire", type: "range", min: "0", max: "100", value: String(preDesire),
  });
  const preValue = el("span", { id: "pre-desire-value" }, String(preDesire));
  const setupHint = el("p", { id: "setup-hint", class: "hint" }, "pick two different attractions");
  const startButton = el("button", { id: "start-button", disabled: "" }, "start the conversation");

  function refreshSetup(): void {
    const a = pickA.value || null;
    const b = pickB.value || null;
    const valid = setupValid(a, b);
    startButton.disabled = !valid;
    setupHint.textContent =
      a !== null && b !== null && a === b
        ? "those are the same attraction - pick two different ones"
        : "pick two different attractions";
  }
  pickA.addEventListener("change", refreshSetup);
  pickB.addEventListener("change", refreshSetup);
  preSlider.addEventListener("input", () => {
    preDesire = clampDesire(Number(preSlider.value));
    preValue.textContent = String(preDesire);
  });

  screens.setup.append(
    el("h1", {}, "tourdesk"),
    el("p", {}, "Pick the two destinations you are choosing between."),
    el("div", { class: "row" }, el("label", {}, "first: "), pickA),
    el("div", { class: "row" }, el("label", {}, "second: "), pickB),
    setupHint,
    el("div", { class: "row" },
      el("label", { for: "pre-desire" }, "How much do you want to visit these places right now? "),
      preSlider, preValue),
    startButton,
  );

  // ---- chat screen ---------------------------------------------------
  const messageList = el("div", { id: "messages" });
  const stateLabel = el("span", { id: "state-label" });
  const gazeSpan = el("span", { id: "gaze-label" });
  const nodSpan = el("span", { id: "nod-indicator" }, "nod");
  const chatInput = el("input", { id: "chat-input", type: "text", placeholder: "say something (empty = silence)" });
  const sendButton = el("button", { id: "send-button" }, "send");
  const noQuestionButton = el("button", { id: "no-question-button" }, NO_QUESTION_PHRASE);
  const toWrapupButton = el("button", { id: "to-wrapup-button", hidden: "" }, "finish and rate");

  function renderChat(): void {
    if (chat === null) return;
    messageList.replaceChildren(
      ...chat.messages.map((m) =>
        el("div", { class: `message ${m.speaker.toLowerCase()}` },
          el("span", { class: "speaker" }, m.speaker === "Robot" ? "robot" : "you"),
          el("span", { class: "text" }, m.text)),
      ),
    );
    stateLabel.textContent = chat.state;
    gazeSpan.textContent = gazeLabel(chat.lastRobotTurn);
    nodSpan.classList.toggle("active", nodActive(chat.lastRobotTurn));
    const done = isDone(chat);
    chatInput.disabled = done;
    sendButton.disabled = done;
    noQuestionButton.disabled = done;
    toWrapupButton.hidden = !done;
    messageList.scrollTop = messageList.scrollHeight;
  }

  async function sendText(text: string): Promise<void> {
    if (chat === null || isDone(chat)) return;
    const trimmed = text.trim();
    const response = await api.sendUtterance(chat.sessionId, trimmed === "" ? undefined : trimmed);
    chat = applyTurn(chat, trimmed === "" ? "(silence)" : trimmed, response.robot_turn, response.state);
    renderChat();
  }

  sendButton.addEventListener("click", async () => {
    const text = chatInput.value;
    chatInput.value = "";
    await sendText(text);
  });
  chatInput.addEventListener("keydown", async (event) => {
    if (event.key === "Enter") {
      const text = chatInput.value;
      chatInput.value = "";
      await sendText(text);
    }
  });
  noQuestionButton.addEventListener("click", () => sendText(NO_QUESTION_PHRASE));
  toWrapupButton.addEventListener("click", () => show("wrapup"));

  screens.chat.append(
    el("div", { id: "status-bar" },
      el("span", {}, "state: "), stateLabel,
      el("span", { class: "sep" }, " | "), gazeSpan,
      el("span", { class: "sep" }, " | "), nodSpan),
    messageList,
    el("div", { class: "row" }, chatInput, sendButton, noQuestionButton),
    toWrapupButton,
  );

  startButton.addEventListener("click", async () => {
    const created = await api.createSession(pickA.value, pickB.value);
    chat = newChatState(created.session_id, created.state);
    chat = applyTurn(chat, null, created.robot_turn, created.state);
    show("chat");
    renderChat();
  });

  // ---- wrap-up screen -------------------------------------------------
  const postSlider = el("input", {
    id: "post-desire", type: "range", min: "0", max: "100", value: "50",
  });
  const postValue = el("span", { id: "post-desire-value" }, "50");
  postSlider.addEventListener("input", () => {
    postValue.textContent = String(clampDesire(Number(postSlider.value)));
  });

  const answers: Array<number | null> = Array(ITEM_COUNT).fill(null);
  const itemsBox = el("div", { id: "questionnaire" });
  questionnaire.items.forEach((item, index) => {
    const row = el("div", { class: "item-row" }, el("p", {}, `${index + 1}. ${item}`));
    const choices = el("div", { class: "choices" });
    for (let value = 1; value <= 7; value += 1) {
      const input = el("input", {
        type: "radio", name: `item-${index}`, value: String(value), id: `item-${index}-${value}`,
      });
      input.addEventListener("change", () => {
        answers[index] = value;
        refreshWrapup();
      });
      choices.append(el("label", { for: `item-${index}-${value}` }, input, String(value)));
    }
    row.append(choices);
    itemsBox.append(row);
  });

  const wrapupHint = el("p", { id: "wrapup-hint", class: "hint" });
  const submitButton = el("button", { id: "submit-ratings", disabled: "" }, "submit ratings");
  const resultBox = el("div", { id: "result", hidden: "" });
  const effectLine = el("p", { id: "effect-line" });
  const metricsBox = el("ul", { id: "metrics" });
  resultBox.append(el("h2", {}, "thanks!"), effectLine, el("h3", {}, "running metrics"), metricsBox);

  function refreshWrapup(): void {
    const error = questionnaireError(answers);
    submitButton.disabled = error !== null;
    wrapupHint.textContent = error ?? "ready to submit";
  }
  refreshWrapup();

  submitButton.addEventListener("click", async () => {
    if (chat === null || questionnaireError(answers) !== null) return;
    const response = await api.submitRatings(
      chat.sessionId,
      preDesire,
      clampDesire(Number(postSlider.value)),
      answers as number[],
    );
    effectLine.textContent = `recommendation effect: ${formatEffect(response.recommendation_effect)}`;
    const metrics = await api.metrics();
    metricsBox.replaceChildren(...formatMetrics(metrics).map((line) => el("li", {}, line)));
    resultBox.hidden = false;
    submitButton.disabled = true;
  });

  screens.wrapup.append(
    el("h1", {}, "before you go"),
    el("div", { class: "row" },
      el("label", { for: "post-desire" }, "How much do you want to visit the recommended place now? "),
      postSlider, postValue),
    itemsBox,
    wrapupHint,
    submitButton,
    resultBox,
  );

  show("setup");
  refreshSetup();
}
