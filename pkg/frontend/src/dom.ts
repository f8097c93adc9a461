// Small DOM helpers so views build elements without innerHTML string
// assembly (user-supplied text lands in textContent, never in markup).

type Attrs = Record<string, string | boolean | ((event: Event) => void)>;
type Child = Node | string | null | undefined;

export function el(tag: string, attrs: Attrs = {}, ...children: Child[]): HTMLElement {
  const node = document.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) {
    if (typeof value === 'function') {
      node.addEventListener(name.replace(/^on/, ''), value);
    } else if (typeof value === 'boolean') {
      if (value) node.setAttribute(name, '');
      if (name === 'disabled') (node as HTMLButtonElement).disabled = value;
    } else {
      node.setAttribute(name, value);
    }
  }
  for (const child of children) {
    if (child === null || child === undefined) continue;
    node.append(typeof child === 'string' ? document.createTextNode(child) : child);
  }
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export function fmtCoins(amount: number): string {
  return `${amount} ${amount === 1 ? 'coin' : 'coins'}`;
}
